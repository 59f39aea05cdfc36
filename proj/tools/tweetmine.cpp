// Command-line front end: ingestion, preprocessing, corpus statistics,
// vocabulary/featurization, classifier training and the experiment
// protocols. Exit codes: 0 success, 2 configuration error, 3 data error.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tweetmine/tweetmine.hpp"

namespace twm = tweetmine;
namespace fs = std::filesystem;

namespace {

struct GlobalArgs {
  std::uint64_t seed = 42;
  std::string out_dir;
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw twm::DataError("cannot create output directory: " + dir);
}

std::vector<twm::TweetRecord> read_input_records(const std::string& in,
                                                const std::string& lang) {
  twm::ReadOptions opts{lang};
  if (in == "-") return twm::read_ndjson(std::cin, opts);
  if (twm::is_tcp_url(in)) {
    std::istringstream stream(twm::read_tcp_stream(in));
    return twm::read_ndjson(stream, opts);
  }
  return twm::read_ndjson_file(in, opts);
}

struct TokenDir {
  std::vector<twm::TokenDoc> topic;
  std::vector<twm::TokenDoc> control;
};

TokenDir load_token_dir(const std::string& dir, bool require_both = true) {
  TokenDir t;
  const std::string topic_path = dir + "/topic.tokens";
  const std::string control_path = dir + "/control.tokens";
  const bool have_topic = fs::exists(topic_path);
  const bool have_control = fs::exists(control_path);
  if (!have_topic && !have_control)
    throw twm::DataError("no topic.tokens or control.tokens in " + dir);
  if (require_both && (!have_topic || !have_control))
    throw twm::DataError("both topic.tokens and control.tokens required in " +
                        dir);
  if (have_topic) t.topic = twm::read_token_docs(topic_path);
  if (have_control) t.control = twm::read_token_docs(control_path);
  return t;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  for (const std::string& part : twm::split_char(csv, ',')) {
    auto p = twm::trim(part);
    if (p.empty()) continue;
    try {
      out.push_back(std::stod(std::string(p)));
    } catch (const std::exception&) {
      throw twm::ConfigError("not a number: " + std::string(p));
    }
  }
  if (out.empty()) throw twm::ConfigError("empty numeric list: " + csv);
  return out;
}

twm::TTestKind parse_test_kind(const std::string& name) {
  if (name == "welch") return twm::TTestKind::welch;
  if (name == "student") return twm::TTestKind::student;
  throw twm::ConfigError("unknown test kind (use welch or student): " + name);
}

twm::CsvRow ttest_csv_row(const std::string& label, const twm::TTestResult& r) {
  return {label, twm::format_double(r.t), twm::format_double(r.df),
          twm::format_double(r.p), twm::format_double(r.mean_a),
          twm::format_double(r.mean_b)};
}

const twm::CsvRow kTTestHeader{"comparison", "t", "df", "p", "mean_a",
                              "mean_b"};

// Flags shared by the experiment-protocol subcommands.
struct ExperimentFlags {
  std::string keywords = "autism,adhd,asperger,aspie";
  std::string vocab_policy = "freq_overall";
  std::size_t vocab_size = 1500;
  std::string scheme = "count";
  std::string classifier = "nb";
  double split_fraction = 0.5;
  bool chronological = false;
  double alpha = 1.0;
  double C = 1.0;
  double lambda = 1e-4;
  double tol = 1e-8;
  bool no_bias = false;
  bool literal_idf = false;

  void add_to(CLI::App* cmd, bool with_classifier = true) {
    cmd->add_option("--keywords", keywords,
                    "bootstrap keywords to strip (comma separated)");
    cmd->add_option("--vocab-policy", vocab_policy,
                    "freq_overall|freq_topic|freq_control|disc_topic|"
                    "disc_control|union|intersection");
    cmd->add_option("--vocab-size", vocab_size, "vocabulary size");
    cmd->add_option("--scheme", scheme, "binary|count|tfidf");
    if (with_classifier)
      cmd->add_option("--model", classifier, "nb|logreg|lasso");
    cmd->add_option("--split", split_fraction, "training fraction");
    cmd->add_flag("--chronological", chronological,
                  "split by input order instead of shuffling");
    cmd->add_option("--alpha", alpha, "naive Bayes smoothing");
    cmd->add_option("--C", C, "logistic loss weight");
    cmd->add_option("--lambda", lambda, "lasso penalty");
    cmd->add_option("--tol", tol, "optimizer tolerance");
    cmd->add_flag("--no-bias", no_bias, "drop the unregularized intercept");
    cmd->add_flag("--literal-idf", literal_idf,
                  "use idf = 1/df instead of ln(N/df)");
  }

  twm::ExperimentConfig to_config(std::uint64_t seed) const {
    twm::ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.split_fraction = split_fraction;
    cfg.chronological_split = chronological;
    cfg.keywords = twm::KeywordSet::parse_csv(keywords);
    cfg.vocab_policy = twm::parse_vocab_policy(vocab_policy);
    cfg.vocab_size = vocab_size;
    cfg.scheme = twm::parse_scheme(scheme);
    cfg.classifier = classifier;
    cfg.nb_alpha = alpha;
    cfg.C = C;
    cfg.lambda = lambda;
    cfg.tol = tol;
    cfg.use_bias = !no_bias;
    cfg.idf_kind =
        literal_idf ? twm::IdfKind::inverse_df : twm::IdfKind::log_n_over_df;
    cfg.validate();
    return cfg;
  }
};

nlohmann::ordered_json experiment_config_json(const twm::ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["split_fraction"] = cfg.split_fraction;
  j["chronological_split"] = cfg.chronological_split;
  j["keywords"] = cfg.keywords.keywords();
  j["vocab_policy"] = twm::vocab_policy_name(cfg.vocab_policy);
  j["vocab_size"] = cfg.vocab_size;
  j["scheme"] = twm::scheme_name(cfg.scheme);
  j["classifier"] = cfg.classifier;
  j["alpha"] = cfg.nb_alpha;
  j["C"] = cfg.C;
  j["lambda"] = cfg.lambda;
  j["tol"] = cfg.tol;
  j["use_bias"] = cfg.use_bias;
  j["idf"] = cfg.idf_kind == twm::IdfKind::inverse_df ? "inverse_df"
                                                     : "log_n_over_df";
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"tweetmine: keyword-bootstrapped tweet corpus analytics"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  app.fallthrough();

  GlobalArgs global;
  app.add_option("--seed", global.seed, "random seed for all experiments")
      ->configurable(true);
  app.add_option("--out", global.out_dir, "output directory");

  // ingest ------------------------------------------------------------
  auto* ingest = app.add_subcommand(
      "ingest", "split an NDJSON stream into topic/control corpora");
  std::string ingest_in = "-", ingest_keywords = "autism,adhd,asperger,aspie";
  std::string ingest_lang = "en";
  ingest->add_option("--in", ingest_in, "NDJSON file, '-' for stdin, or tcp://host:port");
  ingest->add_option("--keywords", ingest_keywords, "comma separated keywords");
  ingest->add_option("--lang", ingest_lang,
                     "keep records whose lang matches this prefix "
                     "(empty disables the filter)");

  // prep ---------------------------------------------------------------
  auto* prep = app.add_subcommand("prep", "preprocess corpora to token docs");
  std::string prep_in, prep_stopwords;
  std::size_t prep_min_len = 2;
  bool prep_no_stem = false;
  std::string prep_url_token = "url", prep_mention_token = "atus";
  prep->add_option("--in", prep_in, "corpus cache directory")->required();
  prep->add_option("--stopwords", prep_stopwords,
                   "stop-word file (defaults to the shipped list)");
  prep->add_option("--min-len", prep_min_len, "minimum token length");
  prep->add_flag("--no-stem", prep_no_stem, "disable stemming");
  prep->add_option("--url-token", prep_url_token, "canonical URL token");
  prep->add_option("--mention-token", prep_mention_token,
                   "canonical mention token");

  // zipf ---------------------------------------------------------------
  auto* zipf = app.add_subcommand("zipf", "rank-frequency fit per corpus");
  std::string zipf_in;
  std::string zipf_fractions = "0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1.0";
  zipf->add_option("--in", zipf_in, "token directory")->required();
  zipf->add_option("--fractions", zipf_fractions,
                   "window fractions (comma separated)");

  // lengths ------------------------------------------------------------
  auto* lengths = app.add_subcommand(
      "lengths", "tweet length histograms and the log-length t-test");
  std::string lengths_in, lengths_test = "welch";
  lengths->add_option("--in", lengths_in, "token directory")->required();
  lengths->add_option("--test", lengths_test, "welch|student");

  // freq ---------------------------------------------------------------
  auto* freq = app.add_subcommand("freq", "most frequent terms per corpus");
  std::string freq_in, freq_exclude;
  std::size_t freq_top = 100;
  freq->add_option("--in", freq_in, "token directory")->required();
  freq->add_option("--top", freq_top, "table size");
  freq->add_option("--exclude", freq_exclude,
                   "keywords excluded by prefix (comma separated)");

  // hashtags -----------------------------------------------------------
  auto* hashtags =
      app.add_subcommand("hashtags", "most frequent hashtags per corpus");
  std::string hashtags_in, hashtags_exclude = "autism,adhd,asperger,aspie";
  std::size_t hashtags_top = 100;
  hashtags->add_option("--in", hashtags_in, "corpus cache directory")
      ->required();
  hashtags->add_option("--top", hashtags_top, "table size");
  hashtags->add_option("--exclude", hashtags_exclude,
                       "keywords excluded by prefix");

  // pos-stats ----------------------------------------------------------
  auto* pos = app.add_subcommand(
      "pos-stats", "per-tag proportion t-tests over tagged dumps");
  std::string pos_a, pos_b, pos_tags, pos_test = "welch";
  pos->add_option("--a", pos_a, "tagged dump for group A")->required();
  pos->add_option("--b", pos_b, "tagged dump for group B")->required();
  pos->add_option("--tags", pos_tags,
                  "declared tagset (comma separated; defaults to the ARK "
                  "TweetNLP tagset)");
  pos->add_option("--test", pos_test, "welch|student");

  // vocab ---------------------------------------------------------------
  auto* vocab = app.add_subcommand("vocab", "build and save a vocabulary");
  std::string vocab_in, vocab_out, vocab_policy = "freq_overall";
  std::string vocab_exclude;
  std::size_t vocab_size = 1500;
  vocab->add_option("--in", vocab_in, "token directory")->required();
  vocab->add_option("--policy", vocab_policy, "vocabulary policy");
  vocab->add_option("--size", vocab_size, "vocabulary size");
  vocab->add_option("--exclude", vocab_exclude, "excluded keywords");
  vocab->add_option("--out-file", vocab_out, "output vocabulary file");

  // train ----------------------------------------------------------------
  auto* train = app.add_subcommand(
      "train", "run the split/strip/featurize/train protocol for one model");
  std::string train_in;
  ExperimentFlags train_flags;
  train->add_option("--in", train_in, "token directory")->required();
  train_flags.add_to(train);

  // evaluate --------------------------------------------------------------
  auto* evaluate =
      app.add_subcommand("evaluate", "evaluate a saved model on a corpus");
  std::string eval_in, eval_model, eval_keywords;
  evaluate->add_option("--in", eval_in, "token directory")->required();
  evaluate->add_option("--model-file", eval_model, "model JSON")->required();
  evaluate->add_option("--keywords", eval_keywords,
                       "keywords stripped before featurization");

  // lasso-sweep ------------------------------------------------------------
  auto* sweep = app.add_subcommand(
      "lasso-sweep", "classification and sparsity across a lambda grid");
  std::string sweep_in, sweep_lambdas = "1e-5,1e-4,1e-3,1e-2";
  std::size_t sweep_top_coef = 10;
  ExperimentFlags sweep_flags;
  sweep->add_option("--in", sweep_in, "token directory")->required();
  sweep->add_option("--lambdas", sweep_lambdas, "lambda grid");
  sweep->add_option("--top-coef", sweep_top_coef,
                    "coefficients reported per lambda");
  sweep_flags.add_to(sweep, /*with_classifier=*/false);

  // loko ---------------------------------------------------------------
  auto* loko = app.add_subcommand(
      "loko", "leave-one-keyword-out robustness analysis");
  std::string loko_in;
  std::size_t loko_min_len = 2;
  std::string loko_stopwords;
  ExperimentFlags loko_flags;
  loko->add_option("--in", loko_in, "corpus cache directory")->required();
  loko->add_option("--min-len", loko_min_len, "minimum token length");
  loko->add_option("--stopwords", loko_stopwords, "stop-word file");
  loko_flags.add_to(loko);

  // confound -----------------------------------------------------------
  auto* confound = app.add_subcommand(
      "confound", "apparent-specificity calculator and simulator");
  double conf_pm = 0.0, conf_pn = 0.0, conf_rho = 0.0;
  std::size_t conf_sim = 0;
  confound->add_option("--pm", conf_pm, "condition true-positive rate")
      ->required();
  confound->add_option("--pn", conf_pn, "non-condition true-negative rate")
      ->required();
  confound->add_option("--rho", conf_rho,
                       "proportion of condition-related control tweets")
      ->required();
  confound->add_option("--simulate", conf_sim,
                       "Monte-Carlo draws (0 disables simulation)");

  // report ----------------------------------------------------------------
  auto* report = app.add_subcommand(
      "report", "full classifier/representation grid with manifest");
  std::string report_in, report_condition_in;
  ExperimentFlags report_flags;
  report->add_option("--in", report_in, "token directory")->required();
  report->add_option("--condition-in", report_condition_in,
                     "second condition's token directory; its topic corpus "
                     "becomes the control class");
  report_flags.add_to(report, /*with_classifier=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage message
    return rc == 0 ? 0 : 2;
  }

  const std::string out = global.out_dir;
  auto need_out = [&]() {
    if (out.empty())
      throw twm::ConfigError("--out DIR is required for this command");
    ensure_dir(out);
  };

  if (*ingest) {
    need_out();
    auto ks = twm::KeywordSet::parse_csv(ingest_keywords);
    auto records = read_input_records(ingest_in, ingest_lang);
    auto [topic, control] = twm::split_corpus(records, ks);
    topic.provenance = "ingest " + ingest_in;
    control.provenance = topic.provenance;
    twm::write_corpus_cache(out, topic, control, ks);
    std::cout << "topic=" << topic.records.size()
              << " control=" << control.records.size() << '\n';
    return 0;
  }

  if (*prep) {
    need_out();
    twm::StopwordSet custom;
    twm::PipelineConfig cfg;
    if (!prep_stopwords.empty()) {
      custom = twm::load_stopwords(prep_stopwords);
      cfg.stopwords = &custom;
    }
    cfg.min_token_len = prep_min_len;
    cfg.stem_enabled = !prep_no_stem;
    cfg.url_token = prep_url_token;
    cfg.mention_token = prep_mention_token;
    cfg.validate();
    for (twm::Label label : {twm::Label::topic, twm::Label::control}) {
      const std::string name = twm::label_name(label);
      const std::string src = prep_in + "/" + name + ".ndjson";
      if (!fs::exists(src)) continue;
      auto corpus = twm::load_corpus_cache(prep_in, label);
      std::vector<twm::TokenDoc> docs;
      docs.reserve(corpus.records.size());
      for (const auto& rec : corpus.records)
        docs.push_back(twm::preprocess(rec.id, rec.text, cfg));
      twm::write_token_docs(docs, out + "/" + name + ".tokens");
      std::cout << name << "=" << docs.size() << '\n';
    }
    return 0;
  }

  if (*zipf) {
    need_out();
    auto fractions = parse_double_list(zipf_fractions);
    TokenDir dir = load_token_dir(zipf_in, /*require_both=*/false);
    for (auto [name, docs] :
         {std::pair{"topic", &dir.topic}, std::pair{"control", &dir.control}}) {
      if (docs->empty()) continue;
      auto table = twm::rank_frequency(*docs);
      auto fit = twm::zipf_fit(table, fractions);
      std::ofstream jf(out + "/zipf_" + name + ".json");
      jf << twm::zipf_fit_to_json(fit).dump(2) << '\n';
      std::ofstream pf(out + "/loglog_" + name + ".tsv");
      twm::write_loglog_points(table, pf);
      std::cout << name << " exponent=" << twm::format_double(fit.exponent)
                << '\n';
    }
    return 0;
  }

  if (*lengths) {
    need_out();
    TokenDir dir = load_token_dir(lengths_in);
    for (auto [name, docs] :
         {std::pair{"topic", &dir.topic}, std::pair{"control", &dir.control}}) {
      auto summary = twm::length_summary(*docs);
      std::vector<twm::CsvRow> rows;
      for (const auto& [len, n] : summary.histogram)
        rows.push_back({std::to_string(len), std::to_string(n)});
      twm::write_csv_file(out + "/lengths_" + std::string(name) + ".csv",
                         {"token_count", "tweet_count"}, rows);
      twm::write_csv_file(
          out + "/lengths_" + std::string(name) + "_log.csv",
          {"log_mean", "log_sd", "n_docs", "n_nonempty"},
          {{twm::format_double(summary.log_mean),
            twm::format_double(summary.log_sd), std::to_string(summary.n_docs),
            std::to_string(summary.n_nonempty)}});
    }
    auto r = twm::length_t_test(dir.topic, dir.control,
                               parse_test_kind(lengths_test));
    twm::write_csv_file(out + "/lengths_ttest.csv", kTTestHeader,
                       {ttest_csv_row("topic_vs_control_log_length", r)});
    std::cout << "t=" << twm::format_double(r.t)
              << " p=" << twm::format_double(r.p) << '\n';
    return 0;
  }

  if (*freq) {
    need_out();
    twm::KeywordSet exclude;
    if (!freq_exclude.empty())
      exclude = twm::KeywordSet::parse_csv(freq_exclude).with_stemmed_forms();
    TokenDir dir = load_token_dir(freq_in, /*require_both=*/false);
    for (auto [name, docs] :
         {std::pair{"topic", &dir.topic}, std::pair{"control", &dir.control}}) {
      if (docs->empty()) continue;
      auto table = twm::term_table(*docs, freq_top, exclude);
      std::vector<twm::CsvRow> rows;
      for (const auto& tc : table)
        rows.push_back({tc.term, std::to_string(tc.count)});
      twm::write_csv_file(out + "/freq_" + std::string(name) + ".csv",
                         {"term", "count"}, rows);
    }
    return 0;
  }

  if (*hashtags) {
    need_out();
    twm::KeywordSet exclude;
    if (!hashtags_exclude.empty())
      exclude = twm::KeywordSet::parse_csv(hashtags_exclude);
    for (twm::Label label : {twm::Label::topic, twm::Label::control}) {
      const std::string name = twm::label_name(label);
      if (!fs::exists(hashtags_in + "/" + name + ".ndjson")) continue;
      auto corpus = twm::load_corpus_cache(hashtags_in, label);
      auto table = twm::hashtag_table(corpus, hashtags_top, exclude);
      std::vector<twm::CsvRow> rows;
      for (const auto& tc : table)
        rows.push_back({tc.term, std::to_string(tc.count)});
      twm::write_csv_file(out + "/hashtags_" + name + ".csv",
                         {"hashtag", "count"}, rows);
    }
    return 0;
  }

  if (*pos) {
    need_out();
    twm::Tagset tagset = twm::Tagset::tweet_nlp();
    std::vector<std::string> tag_list{"N", "V", "^", "O", "A", "R", "!"};
    if (!pos_tags.empty()) {
      tag_list.clear();
      for (const auto& t : twm::split_char(pos_tags, ','))
        if (!twm::trim(t).empty()) tag_list.emplace_back(twm::trim(t));
      tagset = twm::Tagset(tag_list);
    }
    std::ifstream fa(pos_a), fb(pos_b);
    if (!fa) throw twm::DataError("cannot open " + pos_a);
    if (!fb) throw twm::DataError("cannot open " + pos_b);
    auto docs_a = twm::read_pos_annotations(fa, tagset);
    auto docs_b = twm::read_pos_annotations(fb, tagset);
    const auto kind = parse_test_kind(pos_test);
    std::vector<twm::CsvRow> rows;
    for (const std::string& tag : tag_list) {
      auto r = twm::pos_t_test(docs_a, docs_b, tag, kind);
      rows.push_back(ttest_csv_row(tag, r));
      for (auto [name, docs] :
           {std::pair{"a", &docs_a}, std::pair{"b", &docs_b}}) {
        auto bins = twm::pos_binned_means(*docs, tag);
        std::vector<twm::CsvRow> brows;
        for (const auto& bin : bins)
          brows.push_back({std::to_string(bin.length), std::to_string(bin.n),
                           twm::format_double(bin.mean),
                           twm::format_double(bin.sd),
                           twm::format_double(bin.se)});
        twm::write_csv_file(out + "/pos_" + tag + "_" + name + "_by_length.csv",
                           {"length", "n", "mean", "sd", "se"}, brows);
      }
    }
    twm::write_csv_file(out + "/pos_ttests.csv", kTTestHeader, rows);
    return 0;
  }

  if (*vocab) {
    if (vocab_out.empty())
      throw twm::ConfigError("--out-file FILE is required for vocab");
    twm::KeywordSet exclude;
    if (!vocab_exclude.empty())
      exclude = twm::KeywordSet::parse_csv(vocab_exclude).with_stemmed_forms();
    TokenDir dir = load_token_dir(vocab_in);
    auto v = twm::build_vocabulary(dir.topic, dir.control,
                                  twm::parse_vocab_policy(vocab_policy),
                                  vocab_size, exclude);
    if (v.truncated())
      std::cerr << "warning: only " << v.size()
                << " terms available (requested " << vocab_size << ")\n";
    twm::save_vocabulary(v, vocab_out);
    return 0;
  }

  if (*train) {
    need_out();
    auto cfg = train_flags.to_config(global.seed);
    TokenDir dir = load_token_dir(train_in);
    auto prep_exp = twm::prepare_experiment(dir.topic, dir.control, cfg,
                                           cfg.scheme);
    auto model = twm::train_classifier(cfg.classifier, prep_exp.train, cfg);
    auto cm = twm::evaluate(model, prep_exp.test);
    twm::save_model(model, out + "/model.json",
                   cfg.scheme == twm::Scheme::tfidf ? &prep_exp.train.idf
                                                   : nullptr);
    twm::save_vocabulary(*prep_exp.vocab, out + "/vocab.txt");
    twm::write_csv_file(out + "/confusion.csv", twm::confusion_csv_header(),
                       twm::confusion_csv_rows(cm));
    std::cout << "control_acc=" << twm::format_double(cm.control_accuracy())
              << " topic_acc=" << twm::format_double(cm.topic_accuracy())
              << '\n';
    return 0;
  }

  if (*evaluate) {
    need_out();
    auto saved = twm::load_model(eval_model);
    TokenDir dir = load_token_dir(eval_in);
    std::vector<twm::TokenDoc> topic = dir.topic, control = dir.control;
    if (!eval_keywords.empty()) {
      auto strip =
          twm::KeywordSet::parse_csv(eval_keywords).with_stemmed_forms();
      topic = twm::strip_keywords(topic, strip);
      control = twm::strip_keywords(control, strip);
    }
    auto docs = topic;
    docs.insert(docs.end(), control.begin(), control.end());
    std::vector<int> labels(topic.size(), +1);
    labels.insert(labels.end(), control.size(), -1);
    const auto& vocab = twm::model_vocab(saved.model);
    const twm::Scheme scheme = std::visit(
        [](const auto& m) { return m.scheme; }, saved.model);
    if (scheme == twm::Scheme::tfidf && !saved.idf)
      throw twm::DataError(
          "tfidf model file lacks its training idf table");
    twm::LabeledDataset ds =
        scheme == twm::Scheme::tfidf
            ? twm::featurize_with_idf(docs, labels, vocab, scheme, *saved.idf)
            : twm::featurize_corpus(docs, labels, vocab, scheme);
    auto cm = twm::evaluate(saved.model, ds);
    twm::write_csv_file(out + "/confusion.csv", twm::confusion_csv_header(),
                       twm::confusion_csv_rows(cm));
    std::cout << "control_acc=" << twm::format_double(cm.control_accuracy())
              << " topic_acc=" << twm::format_double(cm.topic_accuracy())
              << '\n';
    return 0;
  }

  if (*sweep) {
    need_out();
    auto cfg = sweep_flags.to_config(global.seed);
    auto lambdas = parse_double_list(sweep_lambdas);
    TokenDir dir = load_token_dir(sweep_in);
    auto prep_exp =
        twm::prepare_experiment(dir.topic, dir.control, cfg, cfg.scheme);
    twm::TrainOptions opts;
    opts.use_bias = cfg.use_bias;
    auto points = twm::lasso_sweep(prep_exp.train, prep_exp.test, lambdas,
                                  cfg.tol, opts);
    std::vector<twm::CsvRow> rows, coef_rows;
    for (const auto& p : points) {
      const auto r = p.confusion.rates();
      rows.push_back({twm::format_double(p.lambda), std::to_string(p.nnz),
                      twm::format_double(r[0][0]), twm::format_double(r[1][1]),
                      twm::format_double(p.confusion.overall_accuracy())});
      for (const auto& [term, weight] :
           twm::top_coefficients(p.model, sweep_top_coef))
        coef_rows.push_back(
            {twm::format_double(p.lambda), term, twm::format_double(weight)});
    }
    twm::write_csv_file(out + "/lasso_sweep.csv",
                       {"lambda", "nnz", "control_acc", "topic_acc",
                        "overall_acc"},
                       rows);
    twm::write_csv_file(out + "/lasso_top_coefficients.csv",
                       {"lambda", "term", "weight"}, coef_rows);
    return 0;
  }

  if (*loko) {
    need_out();
    auto cfg = loko_flags.to_config(global.seed);
    twm::StopwordSet custom;
    twm::PipelineConfig prep_cfg;
    if (!loko_stopwords.empty()) {
      custom = twm::load_stopwords(loko_stopwords);
      prep_cfg.stopwords = &custom;
    }
    prep_cfg.min_token_len = loko_min_len;
    auto topic = twm::load_corpus_cache(loko_in, twm::Label::topic);
    auto control = twm::load_corpus_cache(loko_in, twm::Label::control);
    auto rep = twm::run_loko(topic.records, control.records, prep_cfg, cfg);
    std::vector<twm::CsvRow> rows;
    rows.push_back({"(baseline)",
                    twm::format_double(rep.baseline_control_acc),
                    twm::format_double(rep.baseline_topic_acc), "", ""});
    for (const auto& row : rep.rows)
      rows.push_back({row.keyword, twm::format_double(row.acc_control_test),
                      twm::format_double(row.acc_topic_test),
                      row.acc_heldout ? twm::format_double(*row.acc_heldout)
                                      : "",
                      std::to_string(row.n_heldout)});
    twm::write_csv_file(out + "/loko.csv",
                       {"left_out_keyword", "acc_control_test",
                        "acc_topic_test", "acc_heldout_keyword", "n_heldout"},
                       rows);
    return 0;
  }

  if (*confound) {
    twm::ConfoundParams params{conf_pm, conf_pn, conf_rho};
    nlohmann::ordered_json j;
    j["p_m"] = conf_pm;
    j["p_n"] = conf_pn;
    j["rho_m"] = conf_rho;
    j["apparent_specificity"] = twm::apparent_specificity(params);
    if (conf_sim > 0) {
      j["simulated"] = twm::simulate_confound(params, conf_sim, global.seed);
      j["n_draws"] = conf_sim;
      j["seed"] = global.seed;
    }
    std::cout << j.dump(2) << '\n';
    if (!out.empty()) {
      ensure_dir(out);
      std::ofstream f(out + "/confound.json");
      f << j.dump(2) << '\n';
    }
    return 0;
  }

  if (*report) {
    need_out();
    auto cfg = report_flags.to_config(global.seed);
    TokenDir dir = load_token_dir(report_in);
    twm::Report rep;
    rep.config = experiment_config_json(cfg);
    for (const char* f : {"topic.tokens", "control.tokens"})
      rep.corpus_hashes[f] = twm::file_fnv_hash(report_in + "/" + std::string(f));

    std::vector<twm::GridCell> cells;
    if (report_condition_in.empty()) {
      cells = twm::run_basic_classification(dir.topic, dir.control, cfg);
    } else {
      TokenDir other = load_token_dir(report_condition_in,
                                      /*require_both=*/false);
      if (other.topic.empty())
        throw twm::DataError("condition corpus has no topic.tokens: " +
                            report_condition_in);
      rep.corpus_hashes["condition/topic.tokens"] =
          twm::file_fnv_hash(report_condition_in + "/topic.tokens");
      rep.config["condition_experiment"] = true;
      static const std::vector<std::string> kClassifiers{"nb", "logreg"};
      const std::vector<twm::Scheme> schemes{cfg.scheme};
      cells = twm::run_basic_classification(dir.topic, other.topic, cfg,
                                           kClassifiers, schemes);
    }
    twm::NamedTable grid;
    grid.name = "classification_grid";
    grid.header = {"classifier", "scheme", "control_acc", "topic_acc",
                   "overall_acc", "n_control", "n_topic"};
    for (const auto& cell : cells) {
      const auto r = cell.confusion.rates();
      grid.rows.push_back({cell.classifier, twm::scheme_name(cell.scheme),
                           twm::format_double(r[0][0]),
                           twm::format_double(r[1][1]),
                           twm::format_double(cell.confusion.overall_accuracy()),
                           std::to_string(cell.confusion.row_total(0)),
                           std::to_string(cell.confusion.row_total(1))});
      twm::NamedTable cm;
      cm.name = "confusion_" + cell.classifier + "_" +
                twm::scheme_name(cell.scheme);
      cm.header = twm::confusion_csv_header();
      cm.rows = twm::confusion_csv_rows(cell.confusion);
      rep.tables.push_back(std::move(cm));
    }
    rep.tables.insert(rep.tables.begin(), std::move(grid));
    twm::emit_report(rep, out);
    std::cout << "cells=" << cells.size() << '\n';
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const twm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const twm::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
