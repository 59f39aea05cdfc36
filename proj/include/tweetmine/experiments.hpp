#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "tweetmine/classify.hpp"
#include "tweetmine/corpus.hpp"
#include "tweetmine/csv.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/linear.hpp"
#include "tweetmine/model_io.hpp"
#include "tweetmine/naive_bayes.hpp"
#include "tweetmine/rng.hpp"
#include "tweetmine/sparse.hpp"
#include "tweetmine/textprep.hpp"
#include "tweetmine/version.hpp"
#include "tweetmine/vocabulary.hpp"

namespace tweetmine {

struct ExperimentConfig {
  std::uint64_t seed = 42;
  double split_fraction = 0.5;
  bool chronological_split = false;  // first fraction (input order) trains
  KeywordSet keywords;
  VocabPolicy vocab_policy = VocabPolicy::freq_overall;
  std::size_t vocab_size = 1500;
  Scheme scheme = Scheme::count;
  std::string classifier = "nb";  // nb | logreg | lasso
  double nb_alpha = 1.0;
  double C = 1.0;
  double lambda = 1e-4;
  double tol = 1e-8;
  bool use_bias = true;
  IdfKind idf_kind = IdfKind::log_n_over_df;

  void validate() const {
    if (!(split_fraction > 0.0) || !(split_fraction < 1.0))
      throw ConfigError("split fraction must lie in (0, 1)");
    if (classifier != "nb" && classifier != "logreg" && classifier != "lasso")
      throw ConfigError("unknown classifier: " + classifier);
    if (!(nb_alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (!(C > 0.0)) throw ConfigError("C must be > 0");
    if (!(lambda > 0.0)) throw ConfigError("lambda must be > 0");
  }
};

/// Removes every token matched by the keyword set by prefix; order is
/// otherwise preserved.
inline TokenDoc strip_keywords(const TokenDoc& doc, const KeywordSet& ks) {
  TokenDoc out;
  out.tweet_id = doc.tweet_id;
  out.tokens.reserve(doc.tokens.size());
  for (const std::string& tok : doc.tokens)
    if (!ks.matches_token(tok)) out.tokens.push_back(tok);
  return out;
}

inline std::vector<TokenDoc> strip_keywords(std::span<const TokenDoc> docs,
                                            const KeywordSet& ks) {
  std::vector<TokenDoc> out;
  out.reserve(docs.size());
  for (const TokenDoc& d : docs) out.push_back(strip_keywords(d, ks));
  return out;
}

struct IndexSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Seeded uniform split of [0, n): shuffle then cut at round(fraction*n).
/// Deterministic, disjoint and exhaustive. Chronological mode takes the
/// first fraction in input order instead.
inline IndexSplit split_indices(std::size_t n, double fraction, Rng& rng,
                                bool chronological = false) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (!chronological) rng.shuffle(order);
  const auto n_train = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  IndexSplit s;
  s.train.assign(order.begin(), order.begin() + n_train);
  s.test.assign(order.begin() + n_train, order.end());
  return s;
}

template <typename T>
std::vector<T> gather(std::span<const T> items,
                      std::span<const std::size_t> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(items[i]);
  return out;
}

struct CorpusPairSplit {
  std::vector<TokenDoc> train_topic, train_control;
  std::vector<TokenDoc> test_topic, test_control;
  IndexSplit topic_idx, control_idx;
};

/// Splits both corpora with one seeded generator (topic first, then
/// control, so the draw sequence is fixed).
inline CorpusPairSplit split_train_test(std::span<const TokenDoc> topic,
                                        std::span<const TokenDoc> control,
                                        double fraction, std::uint64_t seed,
                                        bool chronological = false) {
  if (topic.empty() || control.empty())
    throw DataError("split_train_test: both corpora must be non-empty");
  Rng rng(seed);
  CorpusPairSplit s;
  s.topic_idx = split_indices(topic.size(), fraction, rng, chronological);
  s.control_idx = split_indices(control.size(), fraction, rng, chronological);
  s.train_topic = gather(topic, std::span<const std::size_t>(s.topic_idx.train));
  s.test_topic = gather(topic, std::span<const std::size_t>(s.topic_idx.test));
  s.train_control =
      gather(control, std::span<const std::size_t>(s.control_idx.train));
  s.test_control =
      gather(control, std::span<const std::size_t>(s.control_idx.test));
  return s;
}

namespace detail {

inline std::vector<int> make_labels(std::size_t n_topic,
                                    std::size_t n_control) {
  std::vector<int> labels(n_topic, +1);
  labels.insert(labels.end(), n_control, -1);
  return labels;
}

inline std::vector<TokenDoc> concat(std::span<const TokenDoc> a,
                                    std::span<const TokenDoc> b) {
  std::vector<TokenDoc> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

/// Featurized train/test pair built by the shared protocol: strip the
/// (stem-augmented) keywords, split, build the vocabulary on the training
/// half only, featurize both halves with training-side idf.
struct PreparedExperiment {
  std::shared_ptr<const Vocabulary> vocab;
  LabeledDataset train;
  LabeledDataset test;
  KeywordSet strip_set;
};

inline PreparedExperiment prepare_experiment(std::span<const TokenDoc> topic,
                                             std::span<const TokenDoc> control,
                                             const ExperimentConfig& cfg,
                                             Scheme scheme) {
  cfg.validate();
  const KeywordSet strip_set = cfg.keywords.with_stemmed_forms();
  const auto topic_stripped = strip_keywords(topic, strip_set);
  const auto control_stripped = strip_keywords(control, strip_set);
  auto split = split_train_test(topic_stripped, control_stripped,
                                cfg.split_fraction, cfg.seed,
                                cfg.chronological_split);

  auto vocab = std::make_shared<Vocabulary>(
      build_vocabulary(split.train_topic, split.train_control,
                       cfg.vocab_policy, cfg.vocab_size, strip_set));
  // the vocabulary constructor already rejects keyword-prefixed terms;
  // this guards against a vocabulary built elsewhere slipping in
  for (const std::string& t : vocab->terms())
    if (strip_set.matches_token(t))
      throw DataError("keyword-prefixed term in experiment vocabulary: " + t);

  PreparedExperiment prep;
  prep.vocab = vocab;
  prep.strip_set = strip_set;
  const auto train_docs = detail::concat(split.train_topic, split.train_control);
  const auto train_labels = detail::make_labels(split.train_topic.size(),
                                                split.train_control.size());
  prep.train = featurize_corpus(train_docs, train_labels, vocab, scheme,
                                cfg.idf_kind);
  const auto test_docs = detail::concat(split.test_topic, split.test_control);
  const auto test_labels = detail::make_labels(split.test_topic.size(),
                                               split.test_control.size());
  prep.test = featurize_with(test_docs, test_labels, prep.train);
  return prep;
}

inline AnyModel train_classifier(const std::string& kind,
                                 const LabeledDataset& train,
                                 const ExperimentConfig& cfg) {
  TrainOptions opts;
  opts.use_bias = cfg.use_bias;
  if (kind == "nb") return train_nb(train, cfg.nb_alpha);
  if (kind == "logreg") return train_logreg(train, cfg.C, cfg.tol, opts);
  if (kind == "lasso")
    return train_lasso(train, cfg.lambda, cfg.tol, opts, cfg.C);
  throw ConfigError("unknown classifier: " + kind);
}

struct GridCell {
  std::string classifier;
  Scheme scheme = Scheme::count;
  ConfusionMatrix2 confusion;
};

/// The published-table protocol: for each scheme, train every classifier
/// on the training half and evaluate on the held-out half. The split and
/// the vocabulary are shared across cells.
inline std::vector<GridCell> run_basic_classification(
    std::span<const TokenDoc> topic, std::span<const TokenDoc> control,
    const ExperimentConfig& cfg,
    std::span<const std::string> classifiers,
    std::span<const Scheme> schemes) {
  std::vector<GridCell> cells;
  for (Scheme scheme : schemes) {
    PreparedExperiment prep = prepare_experiment(topic, control, cfg, scheme);
    for (const std::string& kind : classifiers) {
      GridCell cell;
      cell.classifier = kind;
      cell.scheme = scheme;
      cell.confusion =
          evaluate(train_classifier(kind, prep.train, cfg), prep.test);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

inline std::vector<GridCell> run_basic_classification(
    std::span<const TokenDoc> topic, std::span<const TokenDoc> control,
    const ExperimentConfig& cfg) {
  static const std::vector<std::string> kClassifiers{"nb", "logreg"};
  static const std::vector<Scheme> kSchemes{Scheme::binary, Scheme::count,
                                            Scheme::tfidf};
  return run_basic_classification(topic, control, cfg, kClassifiers,
                                  kSchemes);
}

/// Condition-vs-condition protocol: the identical pipeline with the other
/// condition's corpus standing in as the control class. The keyword set in
/// cfg should cover both conditions' bootstrap keywords.
inline ConfusionMatrix2 run_condition_experiment(
    std::span<const TokenDoc> topic_docs,
    std::span<const TokenDoc> other_condition_docs,
    const ExperimentConfig& cfg) {
  PreparedExperiment prep =
      prepare_experiment(topic_docs, other_condition_docs, cfg, cfg.scheme);
  return evaluate(train_classifier(cfg.classifier, prep.train, cfg),
                  prep.test);
}

// ---------------------------------------------------------------------
// Medical-confound analysis

struct ConfoundParams {
  double p_m = 0.0;    // condition-tweet true-positive rate
  double p_n = 0.0;    // non-condition true-negative rate
  double rho_m = 0.0;  // proportion of control tweets that are condition-related

  void validate() const {
    for (double v : {p_m, p_n, rho_m})
      if (!(v >= 0.0) || !(v <= 1.0))
        throw ConfigError("confound parameters must lie in [0, 1]");
  }
};

/// Probability that a control tweet is classified as control when the
/// control pool itself contains condition-related tweets:
/// p_n + (1 - p_m - p_n) * rho_m.
inline double apparent_specificity(const ConfoundParams& p) {
  p.validate();
  return p.p_n + (1.0 - p.p_m - p.p_n) * p.rho_m;
}

/// Monte-Carlo simulation of the underlying two-stage process: draw
/// whether the control tweet is condition-related, then whether the
/// classifier emits the control label. Returns the fraction of control
/// labels over n_draws.
inline double simulate_confound(const ConfoundParams& p, std::size_t n_draws,
                                std::uint64_t seed) {
  p.validate();
  if (n_draws == 0) throw ConfigError("simulate_confound: n_draws must be > 0");
  Rng rng(seed);
  std::size_t control_labels = 0;
  for (std::size_t i = 0; i < n_draws; ++i) {
    const bool condition_related = rng.bernoulli(p.rho_m);
    bool emits_control;
    if (condition_related)
      emits_control = !rng.bernoulli(p.p_m);  // misclassified as control
    else
      emits_control = rng.bernoulli(p.p_n);  // correctly kept as control
    if (emits_control) ++control_labels;
  }
  return static_cast<double>(control_labels) /
         static_cast<double>(n_draws);
}

// ---------------------------------------------------------------------
// Leave-one-keyword-out

struct LokoRow {
  std::string keyword;             // the left-out keyword
  double acc_control_test = 0.0;   // accuracy on test-side control tweets
  double acc_topic_test = 0.0;     // accuracy on test-side topic tweets
  std::optional<double> acc_heldout;  // accuracy on tweets matched by the
                                      // left-out keyword only; empty when
                                      // no such tweet exists
  std::size_t n_heldout = 0;
};

struct LokoReport {
  std::vector<LokoRow> rows;
  double baseline_control_acc = 0.0;  // all-keyword training reference
  double baseline_topic_acc = 0.0;
};

/// Leave-one-keyword-out protocol. For each keyword k: train on the
/// training-side topic tweets matched by the remaining keywords (plus the
/// full training-side control), then evaluate on (i) test control,
/// (ii) test topic, and (iii) the tweets matched by k only, drawn from the
/// whole topic corpus minus anything used in training. All keywords are
/// stripped from all tweets throughout, exactly as in the basic protocol.
inline LokoReport run_loko(std::span<const TweetRecord> topic_records,
                           std::span<const TweetRecord> control_records,
                           const PipelineConfig& prep_cfg,
                           const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.keywords.size() < 2)
    throw ConfigError("loko requires at least 2 keywords");
  if (topic_records.empty() || control_records.empty())
    throw DataError("loko: both corpora must be non-empty");

  const KeywordSet strip_set = cfg.keywords.with_stemmed_forms();

  // preprocess + strip; keep record<->doc alignment for keyword lookups
  std::vector<TokenDoc> topic_docs, control_docs;
  std::vector<std::vector<std::string>> topic_matches;
  topic_docs.reserve(topic_records.size());
  topic_matches.reserve(topic_records.size());
  for (const TweetRecord& rec : topic_records) {
    topic_docs.push_back(
        strip_keywords(preprocess(rec.id, rec.text, prep_cfg), strip_set));
    topic_matches.push_back(matched_keywords(rec.text, cfg.keywords));
  }
  control_docs.reserve(control_records.size());
  for (const TweetRecord& rec : control_records)
    control_docs.push_back(
        strip_keywords(preprocess(rec.id, rec.text, prep_cfg), strip_set));

  Rng rng(cfg.seed);
  IndexSplit topic_idx = split_indices(topic_docs.size(), cfg.split_fraction,
                                       rng, cfg.chronological_split);
  IndexSplit control_idx = split_indices(control_docs.size(),
                                         cfg.split_fraction, rng,
                                         cfg.chronological_split);
  const auto train_control = gather(std::span<const TokenDoc>(control_docs),
                                    std::span<const std::size_t>(control_idx.train));
  const auto test_control = gather(std::span<const TokenDoc>(control_docs),
                                   std::span<const std::size_t>(control_idx.test));
  const auto test_topic = gather(std::span<const TokenDoc>(topic_docs),
                                 std::span<const std::size_t>(topic_idx.test));

  auto matches_any = [&](std::size_t rec_idx, const KeywordSet& ks) {
    for (const std::string& m : topic_matches[rec_idx])
      for (const std::string& k : ks.keywords())
        if (m == k) return true;
    return false;
  };

  auto run_one = [&](const std::vector<TokenDoc>& train_topic)
      -> std::tuple<AnyModel, LabeledDataset> {
    auto vocab = std::make_shared<Vocabulary>(
        build_vocabulary(train_topic, train_control, cfg.vocab_policy,
                         cfg.vocab_size, strip_set));
    const auto train_docs = detail::concat(train_topic, train_control);
    const auto train_labels =
        detail::make_labels(train_topic.size(), train_control.size());
    LabeledDataset train = featurize_corpus(train_docs, train_labels, vocab,
                                            cfg.scheme, cfg.idf_kind);
    AnyModel model = train_classifier(cfg.classifier, train, cfg);
    return {std::move(model), std::move(train)};
  };

  auto accuracy_on = [&](const AnyModel& model, const LabeledDataset& train,
                         std::span<const TokenDoc> docs, int true_label)
      -> std::optional<double> {
    if (docs.empty()) return std::nullopt;
    const std::vector<int> labels(docs.size(), true_label);
    LabeledDataset ds = featurize_with(docs, labels, train);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (predict(model, ds.vectors[i]).label == true_label) ++hits;
    return static_cast<double>(hits) / static_cast<double>(docs.size());
  };

  LokoReport report;
  {
    const auto train_topic = gather(std::span<const TokenDoc>(topic_docs),
                                    std::span<const std::size_t>(topic_idx.train));
    auto [model, train] = run_one(train_topic);
    report.baseline_control_acc =
        accuracy_on(model, train, test_control, -1).value();
    report.baseline_topic_acc =
        accuracy_on(model, train, test_topic, +1).value();
  }

  for (const std::string& k : cfg.keywords.keywords()) {
    const KeywordSet retained = cfg.keywords.without(k);
    const KeywordSet only_k = KeywordSet({k});

    std::vector<TokenDoc> train_topic;
    std::vector<bool> in_training(topic_docs.size(), false);
    for (std::size_t i : topic_idx.train) {
      if (matches_any(i, retained)) {
        train_topic.push_back(topic_docs[i]);
        in_training[i] = true;
      }
    }
    if (train_topic.empty())
      throw DataError("loko: no training tweets left for keyword " + k);

    // tweets matched by k and no other keyword, from the whole corpus,
    // never drawn from the training set (checked, not assumed)
    std::vector<TokenDoc> heldout;
    for (std::size_t i = 0; i < topic_docs.size(); ++i) {
      if (topic_matches[i].size() == 1 && topic_matches[i][0] == k) {
        if (in_training[i])
          throw DataError("loko: held-out tweet found in training set");
        heldout.push_back(topic_docs[i]);
      }
    }

    auto [model, train] = run_one(train_topic);
    LokoRow row;
    row.keyword = k;
    row.acc_control_test =
        accuracy_on(model, train, test_control, -1).value();
    row.acc_topic_test = accuracy_on(model, train, test_topic, +1).value();
    row.n_heldout = heldout.size();
    row.acc_heldout = accuracy_on(model, train, heldout, +1);
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------
// Report emission

struct NamedTable {
  std::string name;  // file stem; written as <name>.csv
  CsvRow header;
  std::vector<CsvRow> rows;
};

struct NamedSeries {
  std::string name;  // file stem; written as <name>.tsv
  std::string x_label, y_label;
  std::vector<std::pair<double, double>> points;
};

struct Report {
  nlohmann::ordered_json config;  // includes the seed
  std::map<std::string, std::string> corpus_hashes;
  std::vector<NamedTable> tables;
  std::vector<NamedSeries> series;
};

inline std::string file_fnv_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
    h = fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())),
                h);
  return hex64(h);
}

/// Writes the report directory: every table as CSV, every series as a
/// two-column TSV, and a manifest carrying config, seed, corpus hashes and
/// versions. Nothing time-dependent is written, so re-running the same
/// experiment reproduces every byte.
inline void emit_report(const Report& report, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create report directory: " + dir);

  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["config"] = report.config;
  manifest["corpus_hashes"] = report.corpus_hashes;
  auto files = nlohmann::ordered_json::array();
  for (const NamedTable& t : report.tables) files.push_back(t.name + ".csv");
  for (const NamedSeries& s : report.series) files.push_back(s.name + ".tsv");
  manifest["files"] = files;
  {
    std::ofstream out(dir + "/manifest.json");
    if (!out) throw DataError("cannot write manifest in " + dir);
    out << manifest.dump(2) << '\n';
  }
  for (const NamedTable& t : report.tables)
    write_csv_file(dir + "/" + t.name + ".csv", t.header, t.rows);
  for (const NamedSeries& s : report.series) {
    std::ofstream out(dir + "/" + s.name + ".tsv");
    if (!out) throw DataError("cannot write series file in " + dir);
    out << "# " << s.x_label << '\t' << s.y_label << '\n';
    for (const auto& [x, y] : s.points)
      out << format_double(x) << '\t' << format_double(y) << '\n';
  }
}

}  // namespace tweetmine
