#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "tweetmine/classify.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/strings.hpp"
#include "tweetmine/version.hpp"

namespace tweetmine {

/// Model files are self-contained JSON: kind, scheme, the vocabulary (hash
/// and terms), the hyperparameters, the learned tables or weights, and the
/// training diagnostics. For tfidf models the training-side idf table is
/// stored too, since evaluation must reuse it verbatim.
inline nlohmann::ordered_json model_to_json(const AnyModel& model,
                                            const IdfTable* idf = nullptr) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  const auto& vocab = model_vocab(model);
  j["vocab_hash"] = hex64(vocab->hash());
  if (const NBModel* nb = std::get_if<NBModel>(&model)) {
    j["kind"] = "nb";
    j["scheme"] = scheme_name(nb->scheme);
    j["alpha"] = nb->alpha;
    j["log_prior"] = {nb->log_prior[0], nb->log_prior[1]};
    j["log_likelihood_control"] = nb->log_likelihood[0];
    j["log_likelihood_topic"] = nb->log_likelihood[1];
  } else {
    const LinearModel& lm = std::get<LinearModel>(model);
    j["kind"] = lm.penalty == Penalty::l2 ? "logreg" : "lasso";
    j["scheme"] = scheme_name(lm.scheme);
    if (lm.penalty == Penalty::l2)
      j["C"] = lm.C;
    else {
      j["C"] = lm.C;
      j["lambda"] = lm.lambda;
    }
    j["bias"] = lm.bias;
    j["use_bias"] = lm.use_bias;
    j["weights"] = lm.weights;
    j["diagnostics"] = {{"final_objective", lm.diagnostics.final_objective},
                        {"passes", lm.diagnostics.passes},
                        {"grad_norm", lm.diagnostics.grad_norm},
                        {"kkt_violation", lm.diagnostics.kkt_violation},
                        {"nnz", lm.diagnostics.nnz}};
  }
  if (idf != nullptr) {
    j["idf"] = idf->idf;
    j["idf_n_docs"] = idf->n_docs;
    j["idf_kind"] =
        idf->kind == IdfKind::inverse_df ? "inverse_df" : "log_n_over_df";
  }
  j["vocab_terms"] = vocab->terms();
  return j;
}

inline void save_model(const AnyModel& model, const std::string& path,
                       const IdfTable* idf = nullptr) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << model_to_json(model, idf).dump(2) << '\n';
}

struct SavedModel {
  AnyModel model;
  std::optional<IdfTable> idf;
};

inline SavedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open model file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed model JSON: " + std::string(e.what()),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  const std::string kind = j.at("kind").get<std::string>();
  auto vocab = std::make_shared<Vocabulary>(
      j.at("vocab_terms").get<std::vector<std::string>>(),
      VocabPolicy::freq_overall, KeywordSet{});
  if (hex64(vocab->hash()) != j.at("vocab_hash").get<std::string>())
    throw SchemaError("model vocab_hash does not match its term list",
                      "vocab_hash");
  const Scheme scheme = parse_scheme(j.at("scheme").get<std::string>());
  std::optional<IdfTable> idf;
  if (j.contains("idf")) {
    IdfTable t;
    t.idf = j["idf"].get<std::vector<double>>();
    t.n_docs = j.value("idf_n_docs", std::size_t{0});
    t.kind = j.value("idf_kind", std::string("log_n_over_df")) == "inverse_df"
                 ? IdfKind::inverse_df
                 : IdfKind::log_n_over_df;
    if (t.idf.size() != vocab->size())
      throw SchemaError("idf table size does not match vocabulary", "idf");
    idf = std::move(t);
  }
  if (kind == "nb") {
    NBModel m;
    m.scheme = scheme;
    m.vocab = std::move(vocab);
    m.alpha = j.at("alpha").get<double>();
    auto prior = j.at("log_prior").get<std::vector<double>>();
    if (prior.size() != 2)
      throw SchemaError("log_prior must have two entries", "log_prior");
    m.log_prior = {prior[0], prior[1]};
    m.log_likelihood[0] =
        j.at("log_likelihood_control").get<std::vector<double>>();
    m.log_likelihood[1] =
        j.at("log_likelihood_topic").get<std::vector<double>>();
    if (m.log_likelihood[0].size() != m.vocab->size() ||
        m.log_likelihood[1].size() != m.vocab->size())
      throw SchemaError("likelihood table size does not match vocabulary",
                        "log_likelihood");
    return {AnyModel(std::move(m)), std::move(idf)};
  }
  if (kind == "logreg" || kind == "lasso") {
    LinearModel m;
    m.penalty = kind == "logreg" ? Penalty::l2 : Penalty::l1;
    m.scheme = scheme;
    m.vocab = std::move(vocab);
    m.C = j.value("C", 1.0);
    m.lambda = j.value("lambda", 0.0);
    m.bias = j.at("bias").get<double>();
    m.use_bias = j.value("use_bias", true);
    m.weights = j.at("weights").get<std::vector<double>>();
    if (m.weights.size() != m.vocab->size())
      throw SchemaError("weight vector size does not match vocabulary",
                        "weights");
    if (j.contains("diagnostics")) {
      const auto& d = j["diagnostics"];
      m.diagnostics.final_objective = d.value("final_objective", 0.0);
      m.diagnostics.passes = d.value("passes", std::size_t{0});
      m.diagnostics.grad_norm = d.value("grad_norm", 0.0);
      m.diagnostics.kkt_violation = d.value("kkt_violation", 0.0);
      m.diagnostics.nnz = d.value("nnz", std::size_t{0});
    }
    return {AnyModel(std::move(m)), std::move(idf)};
  }
  throw SchemaError("unknown model kind: " + kind, "kind");
}

}  // namespace tweetmine
