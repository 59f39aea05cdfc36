#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/sparse.hpp"

namespace tweetmine {

inline double softplus(double u) {
  // log(1 + e^u) without overflow
  if (u > 35.0) return u;
  if (u < -35.0) return std::exp(u);
  return std::log1p(std::exp(u));
}

inline double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

inline double sparse_dot(std::span<const double> w, const SparseVector& x) {
  double s = 0.0;
  for (const SparseEntry& e : x.entries) {
    if (e.index >= w.size())
      throw SchemaError("vector index out of the model's dimension", "x");
    s += w[e.index] * e.value;
  }
  return s;
}

/// Unweighted logistic loss sum_i log(1 + exp(-y_i (w.x_i + b))).
inline double logistic_loss(const LabeledDataset& ds,
                            std::span<const double> w, double bias) {
  double loss = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double z = ds.labels[i] * (sparse_dot(w, ds.vectors[i]) + bias);
    loss += softplus(-z);
  }
  return loss;
}

/// The L2-regularized objective: C * loss + w.w (bias unpenalized).
inline double logreg_objective(const LabeledDataset& ds,
                               std::span<const double> w, double bias,
                               double C) {
  double pen = 0.0;
  for (double v : w) pen += v * v;
  return C * logistic_loss(ds, w, bias) + pen;
}

/// Gradient of logreg_objective w.r.t. (w, bias).
inline std::pair<std::vector<double>, double> logreg_gradient(
    const LabeledDataset& ds, std::span<const double> w, double bias,
    double C) {
  std::vector<double> gw(w.size(), 0.0);
  double gb = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double y = ds.labels[i];
    const double z = y * (sparse_dot(w, ds.vectors[i]) + bias);
    const double tau = sigmoid(-z);
    const double coef = C * -y * tau;
    for (const SparseEntry& e : ds.vectors[i].entries)
      gw[e.index] += coef * e.value;
    gb += coef;
  }
  for (std::size_t j = 0; j < w.size(); ++j) gw[j] += 2.0 * w[j];
  return {std::move(gw), gb};
}

/// The L1-regularized objective: C * loss + lambda * |w|_1.
inline double lasso_objective(const LabeledDataset& ds,
                              std::span<const double> w, double bias, double C,
                              double lambda) {
  double pen = 0.0;
  for (double v : w) pen += std::fabs(v);
  return C * logistic_loss(ds, w, bias) + lambda * pen;
}

enum class Penalty { l2, l1 };

struct LinearDiagnostics {
  double final_objective = 0.0;
  std::size_t passes = 0;       // full coordinate sweeps
  double grad_norm = 0.0;       // inf-norm of the gradient (L2)
  double kkt_violation = 0.0;   // max per-coordinate KKT violation (L1)
  std::size_t nnz = 0;          // nonzero weights
};

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  bool use_bias = true;
  Penalty penalty = Penalty::l2;
  double C = 1.0;
  double lambda = 0.0;
  LinearDiagnostics diagnostics;
  Scheme scheme = Scheme::count;
  std::shared_ptr<const Vocabulary> vocab;
};

/// Optimizer failed to reach the requested tolerance within the pass cap.
class ConvergenceError : public DataError {
 public:
  ConvergenceError(const std::string& what, LinearDiagnostics diag)
      : DataError(what), diagnostics(diag) {}
  LinearDiagnostics diagnostics;
};

struct TrainOptions {
  double tol = 1e-8;
  std::size_t max_passes = 100000;
  bool use_bias = true;
};

namespace detail {

/// Cyclic coordinate descent with one-dimensional Newton steps and an
/// Armijo backtracking line search, after the CDN method of the LIBLINEAR
/// line of work. Handles the smooth L2 objective and the L1 objective
/// (via the soft-thresholded Newton direction) in one frame. Entirely
/// deterministic: fixed visit order, no randomization.
class CdnSolver {
 public:
  CdnSolver(const LabeledDataset& ds, Penalty penalty, double C,
            double lambda, const TrainOptions& opts)
      : ds_(ds),
        penalty_(penalty),
        C_(C),
        lambda_(lambda),
        opts_(opts),
        dim_(ds.dim()),
        w_(ds.dim(), 0.0) {
    bool has_pos = false, has_neg = false;
    for (int y : ds.labels) {
      if (y > 0)
        has_pos = true;
      else
        has_neg = true;
    }
    if (!has_pos || !has_neg)
      throw DataError("training set must contain both classes");
    cols_.resize(dim_);
    for (std::size_t i = 0; i < ds.size(); ++i)
      for (const SparseEntry& e : ds.vectors[i].entries)
        cols_[e.index].emplace_back(static_cast<std::uint32_t>(i), e.value);
    z_.assign(ds.size(), 0.0);  // w = 0, b = 0
  }

  /// Warm start from an existing iterate.
  void start_from(std::span<const double> w, double bias) {
    if (w.size() != dim_) throw SchemaError("warm start dimension", "w");
    w_.assign(w.begin(), w.end());
    bias_ = opts_.use_bias ? bias : 0.0;
    for (std::size_t i = 0; i < ds_.size(); ++i)
      z_[i] = ds_.labels[i] * (sparse_dot(w_, ds_.vectors[i]) + bias_);
  }

  LinearModel solve() {
    std::size_t pass = 0;
    double violation = 0.0;
    bool converged = false;
    while (pass < opts_.max_passes) {
      ++pass;
      double sweep_viol = 0.0;
      for (std::size_t j = 0; j < dim_; ++j)
        sweep_viol = std::max(sweep_viol, update_coordinate(j));
      if (opts_.use_bias)
        sweep_viol = std::max(sweep_viol, update_bias());
      if (sweep_viol <= opts_.tol) {
        // confirm on a fresh gradient; sweep-time values are stale
        violation = fresh_violation();
        if (violation <= opts_.tol) {
          converged = true;
          break;
        }
      }
    }
    if (!converged) violation = fresh_violation();

    LinearModel model;
    model.weights = w_;
    model.bias = bias_;
    model.use_bias = opts_.use_bias;
    model.penalty = penalty_;
    model.C = C_;
    model.lambda = lambda_;
    model.scheme = ds_.scheme;
    model.vocab = ds_.vocab;
    LinearDiagnostics& d = model.diagnostics;
    d.passes = pass;
    d.final_objective = penalty_ == Penalty::l2
                            ? logreg_objective(ds_, w_, bias_, C_)
                            : lasso_objective(ds_, w_, bias_, C_, lambda_);
    (penalty_ == Penalty::l2 ? d.grad_norm : d.kkt_violation) = violation;
    for (double v : w_)
      if (v != 0.0) ++d.nnz;
    if (!converged)
      throw ConvergenceError(
          "coordinate descent did not reach tol=" +
              std::to_string(opts_.tol) + " within " +
              std::to_string(opts_.max_passes) +
              " passes (violation=" + std::to_string(violation) + ")",
          d);
    return model;
  }

 private:
  // Loss change when coordinate j moves by delta (bias: j == dim_).
  // softplus(a+eps) - softplus(a) == log1p(sigmoid(a) * expm1(eps)),
  // which stays exact for the tiny steps taken near convergence where the
  // naive difference of softplus values would cancel to noise.
  static double row_loss_delta(double z, double eps) {
    return std::log1p(sigmoid(-z) * std::expm1(eps));
  }

  double loss_delta(std::size_t j, double delta) const {
    double s = 0.0;
    if (j == dim_) {
      for (std::size_t i = 0; i < z_.size(); ++i)
        s += row_loss_delta(z_[i], -ds_.labels[i] * delta);
    } else {
      for (const auto& [i, v] : cols_[j])
        s += row_loss_delta(z_[i], -ds_.labels[i] * v * delta);
    }
    return s;
  }

  void apply_step(std::size_t j, double delta) {
    if (j == dim_) {
      bias_ += delta;
      for (std::size_t i = 0; i < z_.size(); ++i)
        z_[i] += ds_.labels[i] * delta;
    } else {
      w_[j] += delta;
      for (const auto& [i, v] : cols_[j]) z_[i] += ds_.labels[i] * v * delta;
    }
  }

  // Loss gradient and curvature along coordinate j at the current point.
  std::pair<double, double> loss_g_h(std::size_t j) const {
    double g = 0.0, h = 0.0;
    if (j == dim_) {
      for (std::size_t i = 0; i < z_.size(); ++i) {
        const double y = ds_.labels[i];
        const double tau = sigmoid(-z_[i]);
        g += -y * tau;
        h += tau * (1.0 - tau);
      }
    } else {
      for (const auto& [i, v] : cols_[j]) {
        const double y = ds_.labels[i];
        const double tau = sigmoid(-z_[i]);
        g += -y * v * tau;
        h += v * v * tau * (1.0 - tau);
      }
    }
    return {C_ * g, C_ * h};
  }

  double kkt_violation_at(double w, double g_loss) const {
    if (w > 0.0) return std::fabs(g_loss + lambda_);
    if (w < 0.0) return std::fabs(g_loss - lambda_);
    return std::max(0.0, std::fabs(g_loss) - lambda_);
  }

  // One coordinate update; returns the pre-update optimality violation.
  double update_coordinate(std::size_t j) {
    auto [gl, h] = loss_g_h(j);
    double viol, d;
    if (penalty_ == Penalty::l2) {
      const double g = gl + 2.0 * w_[j];
      const double hh = h + 2.0;
      viol = std::fabs(g);
      if (viol == 0.0) return 0.0;
      d = -g / hh;
      backtrack(j, d, g * d, /*l1_term=*/0.0);
    } else {
      viol = kkt_violation_at(w_[j], gl);
      const double hh = std::max(h, 1e-12);
      if (gl + lambda_ <= hh * w_[j])
        d = -(gl + lambda_) / hh;
      else if (gl - lambda_ >= hh * w_[j])
        d = -(gl - lambda_) / hh;
      else
        d = -w_[j];
      if (d == 0.0) return viol;
      const double decrease =
          gl * d + lambda_ * (std::fabs(w_[j] + d) - std::fabs(w_[j]));
      backtrack(j, d, decrease, lambda_);
    }
    return viol;
  }

  double update_bias() {
    auto [g, h] = loss_g_h(dim_);
    const double viol = std::fabs(g);
    if (viol == 0.0) return 0.0;
    const double d = -g / std::max(h, 1e-12);
    backtrack(dim_, d, g * d, 0.0);
    return viol;
  }

  // Armijo backtracking on the coordinate-restricted objective. `decrease`
  // is the expected first-order decrease at t = 1; `l1_term` is lambda for
  // penalized coordinates and 0 otherwise.
  void backtrack(std::size_t j, double d, double decrease, double l1_term) {
    constexpr double kSigma = 0.01;
    constexpr double kBeta = 0.5;
    constexpr int kMaxHalvings = 60;
    const double w0 = j == dim_ ? 0.0 : w_[j];
    double t = 1.0;
    for (int k = 0; k < kMaxHalvings; ++k) {
      const double delta = t * d;
      double obj_delta = C_ * loss_delta(j, delta);
      if (l1_term > 0.0)
        obj_delta += l1_term * (std::fabs(w0 + delta) - std::fabs(w0));
      else if (j != dim_ && penalty_ == Penalty::l2)
        obj_delta += (w0 + delta) * (w0 + delta) - w0 * w0;
      if (obj_delta <= kSigma * t * decrease) {
        apply_step(j, delta);
        return;
      }
      t *= kBeta;
    }
    // No acceptable step: the coordinate is at numerical stationarity.
  }

  // Violation from a fresh full gradient: inf-norm for L2, max KKT
  // violation for L1; the bias gradient counts in both.
  double fresh_violation() {
    double v = 0.0;
    std::vector<double> gl(dim_, 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < z_.size(); ++i) {
      const double y = ds_.labels[i];
      const double tau = sigmoid(-z_[i]);
      const double coef = C_ * -y * tau;
      for (const SparseEntry& e : ds_.vectors[i].entries)
        gl[e.index] += coef * e.value;
      gb += coef;
    }
    for (std::size_t j = 0; j < dim_; ++j) {
      if (penalty_ == Penalty::l2)
        v = std::max(v, std::fabs(gl[j] + 2.0 * w_[j]));
      else
        v = std::max(v, kkt_violation_at(w_[j], gl[j]));
    }
    if (opts_.use_bias) v = std::max(v, std::fabs(gb));
    return v;
  }

  const LabeledDataset& ds_;
  Penalty penalty_;
  double C_;
  double lambda_;
  TrainOptions opts_;
  std::size_t dim_;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> cols_;
  std::vector<double> w_;
  double bias_ = 0.0;
  std::vector<double> z_;  // margins y_i (w.x_i + b)
};

}  // namespace detail

/// Trains L2-regularized logistic regression: minimizes
/// C * sum log(1+exp(-y w.x)) + w.w to |grad|_inf <= tol.
inline LinearModel train_logreg(const LabeledDataset& ds, double C = 1.0,
                                double tol = 1e-8, TrainOptions opts = {}) {
  if (!(C > 0.0)) throw ConfigError("logreg: C must be > 0");
  opts.tol = tol;
  return detail::CdnSolver(ds, Penalty::l2, C, 0.0, opts).solve();
}

/// Trains the LASSO classifier: minimizes
/// C * sum log(1+exp(-y w.x)) + lambda |w|_1 by coordinate descent with
/// soft-thresholding, to KKT violation <= tol. An optional warm start
/// (e.g. the solution at a neighbouring lambda) only changes the starting
/// iterate, never the convergence criterion.
inline LinearModel train_lasso(const LabeledDataset& ds, double lambda,
                               double tol = 1e-8, TrainOptions opts = {},
                               double C = 1.0,
                               const LinearModel* warm_start = nullptr) {
  if (!(lambda > 0.0)) throw ConfigError("lasso: lambda must be > 0");
  if (!(C > 0.0)) throw ConfigError("lasso: C must be > 0");
  opts.tol = tol;
  detail::CdnSolver solver(ds, Penalty::l1, C, lambda, opts);
  if (warm_start != nullptr)
    solver.start_from(warm_start->weights, warm_start->bias);
  return solver.solve();
}

}  // namespace tweetmine
