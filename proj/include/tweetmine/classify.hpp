#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tweetmine/csv.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/linear.hpp"
#include "tweetmine/naive_bayes.hpp"

namespace tweetmine {

struct Prediction {
  int label = -1;      // +1 topic, -1 control
  double score = 0.0;  // log-odds (NB) or decision value (linear)
};

/// Ties (score exactly 0) go to the control class.
inline Prediction predict(const NBModel& m, const SparseVector& x) {
  const auto s = nb_log_scores(m, x);
  const double score = s[1] - s[0];
  return {score > 0.0 ? +1 : -1, score};
}

inline Prediction predict(const LinearModel& m, const SparseVector& x) {
  const double score = sparse_dot(m.weights, x) + m.bias;
  return {score > 0.0 ? +1 : -1, score};
}

using AnyModel = std::variant<NBModel, LinearModel>;

inline Prediction predict(const AnyModel& m, const SparseVector& x) {
  return std::visit([&](const auto& model) { return predict(model, x); }, m);
}

inline const std::shared_ptr<const Vocabulary>& model_vocab(const AnyModel& m) {
  return std::visit(
      [](const auto& model) -> const std::shared_ptr<const Vocabulary>& {
        return model.vocab;
      },
      m);
}

/// 2x2 confusion counts; rows are the true class (control first, topic
/// second), columns the predicted class in the same order.
struct ConfusionMatrix2 {
  std::array<std::array<std::uint64_t, 2>, 2> counts{{{0, 0}, {0, 0}}};

  void add(int true_label, int predicted_label) {
    ++counts[class_index(true_label)][class_index(predicted_label)];
  }

  std::uint64_t row_total(std::size_t row) const {
    return counts[row][0] + counts[row][1];
  }

  std::uint64_t total() const { return row_total(0) + row_total(1); }

  /// Row-normalized rates; a row with no examples normalizes to zeros.
  std::array<std::array<double, 2>, 2> rates() const {
    std::array<std::array<double, 2>, 2> r{{{0.0, 0.0}, {0.0, 0.0}}};
    for (std::size_t i = 0; i < 2; ++i) {
      const double n = static_cast<double>(row_total(i));
      if (n == 0.0) continue;
      r[i][0] = static_cast<double>(counts[i][0]) / n;
      r[i][1] = static_cast<double>(counts[i][1]) / n;
    }
    return r;
  }

  double control_accuracy() const { return rates()[0][0]; }
  double topic_accuracy() const { return rates()[1][1]; }

  double overall_accuracy() const {
    const double n = static_cast<double>(total());
    if (n == 0.0) return 0.0;
    return static_cast<double>(counts[0][0] + counts[1][1]) / n;
  }
};

namespace detail {

inline void check_same_vocab(const std::shared_ptr<const Vocabulary>& a,
                             const std::shared_ptr<const Vocabulary>& b) {
  if (!a || !b || (a != b && a->hash() != b->hash()))
    throw SchemaError("model and dataset vocabularies differ", "vocab");
}

}  // namespace detail

template <typename Model>
ConfusionMatrix2 evaluate(const Model& model, const LabeledDataset& test) {
  if (test.size() == 0) throw DataError("evaluate: empty test set");
  detail::check_same_vocab(model.vocab, test.vocab);
  ConfusionMatrix2 cm;
  for (std::size_t i = 0; i < test.size(); ++i)
    cm.add(test.labels[i], predict(model, test.vectors[i]).label);
  return cm;
}

inline ConfusionMatrix2 evaluate(const AnyModel& model,
                                 const LabeledDataset& test) {
  return std::visit([&](const auto& m) { return evaluate(m, test); }, model);
}

struct LassoSweepPoint {
  double lambda = 0.0;
  ConfusionMatrix2 confusion;
  std::size_t nnz = 0;
  LinearModel model;
};

/// Trains and evaluates the LASSO classifier at each lambda. Fits are
/// warm-started along the grid in the order given (the usual path
/// strategy); every returned solution independently satisfies the KKT
/// tolerance.
inline std::vector<LassoSweepPoint> lasso_sweep(
    const LabeledDataset& train, const LabeledDataset& test,
    std::span<const double> lambdas, double tol = 1e-8,
    TrainOptions opts = {}) {
  std::vector<LassoSweepPoint> out;
  const LinearModel* prev = nullptr;
  for (double lambda : lambdas) {
    LassoSweepPoint p;
    p.lambda = lambda;
    p.model = train_lasso(train, lambda, tol, opts,
                          /*C=*/1.0, prev);
    p.nnz = p.model.diagnostics.nnz;
    p.confusion = evaluate(p.model, test);
    out.push_back(std::move(p));
    prev = &out.back().model;
  }
  return out;
}

/// Terms with the k largest-magnitude weights, sign preserved.
inline std::vector<std::pair<std::string, double>> top_coefficients(
    const LinearModel& model, std::size_t k) {
  std::vector<std::size_t> order(model.weights.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::fabs(model.weights[a]);
    const double mb = std::fabs(model.weights[b]);
    if (ma != mb) return ma > mb;
    return model.vocab->terms()[a] < model.vocab->terms()[b];
  });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < order.size() && i < k; ++i)
    out.emplace_back(model.vocab->terms()[order[i]],
                     model.weights[order[i]]);
  return out;
}

/// Confusion matrix CSV, control row first (the published table order).
inline std::vector<CsvRow> confusion_csv_rows(const ConfusionMatrix2& cm) {
  const auto r = cm.rates();
  std::vector<CsvRow> rows;
  rows.push_back({"control", std::to_string(cm.counts[0][0]),
                  std::to_string(cm.counts[0][1]), format_double(r[0][0]),
                  format_double(r[0][1])});
  rows.push_back({"topic", std::to_string(cm.counts[1][0]),
                  std::to_string(cm.counts[1][1]), format_double(r[1][0]),
                  format_double(r[1][1])});
  return rows;
}

inline const CsvRow& confusion_csv_header() {
  static const CsvRow header{"true_class", "predicted_control",
                             "predicted_topic", "rate_control", "rate_topic"};
  return header;
}

}  // namespace tweetmine
