#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/sparse.hpp"

namespace tweetmine {

/// Multinomial naive Bayes over smoothed class term masses. Class index 0
/// is control (y = -1), index 1 is topic (y = +1). Under the count scheme
/// the masses are term counts; under binary they are presence counts;
/// under tfidf they are the accumulated weights.
struct NBModel {
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_likelihood;  // aligned with vocab
  double alpha = 1.0;
  Scheme scheme = Scheme::count;
  std::shared_ptr<const Vocabulary> vocab;

  std::size_t dim() const { return log_likelihood[0].size(); }
};

inline std::size_t class_index(int label) { return label > 0 ? 1 : 0; }

inline NBModel train_nb(const LabeledDataset& ds, double alpha = 1.0) {
  if (!(alpha > 0.0)) throw ConfigError("nb: alpha must be > 0");
  if (ds.size() == 0) throw DataError("nb: empty dataset");
  const std::size_t n_d = ds.dim();
  std::array<std::vector<double>, 2> mass{std::vector<double>(n_d, 0.0),
                                          std::vector<double>(n_d, 0.0)};
  std::array<double, 2> total{0.0, 0.0};
  std::array<std::size_t, 2> n_docs{0, 0};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const std::size_t c = class_index(ds.labels[i]);
    ++n_docs[c];
    for (const SparseEntry& e : ds.vectors[i].entries) {
      mass[c][e.index] += e.value;
      total[c] += e.value;
    }
  }
  if (n_docs[0] == 0 || n_docs[1] == 0)
    throw DataError("nb: degenerate training set, only one class present");

  NBModel model;
  model.alpha = alpha;
  model.scheme = ds.scheme;
  model.vocab = ds.vocab;
  const double n = static_cast<double>(ds.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.log_prior[c] = std::log(static_cast<double>(n_docs[c]) / n);
    model.log_likelihood[c].resize(n_d);
    const double denom = total[c] + alpha * static_cast<double>(n_d);
    for (std::size_t j = 0; j < n_d; ++j)
      model.log_likelihood[c][j] = std::log((mass[c][j] + alpha) / denom);
  }
  return model;
}

/// Unnormalized class log-scores log Pr(y) + sum_i x_i log Pr(t_i|y).
inline std::array<double, 2> nb_log_scores(const NBModel& m,
                                           const SparseVector& x) {
  std::array<double, 2> s{m.log_prior[0], m.log_prior[1]};
  for (const SparseEntry& e : x.entries) {
    if (e.index >= m.dim())
      throw SchemaError("vector index out of the model's vocabulary", "x");
    s[0] += e.value * m.log_likelihood[0][e.index];
    s[1] += e.value * m.log_likelihood[1][e.index];
  }
  return s;
}

/// Posterior probability of the topic class.
inline double nb_posterior_topic(const NBModel& m, const SparseVector& x) {
  const auto s = nb_log_scores(m, x);
  return 1.0 / (1.0 + std::exp(s[0] - s[1]));
}

}  // namespace tweetmine
