#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tweetmine/error.hpp"

namespace tweetmine {

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (n-1 denominator).
inline double sample_variance(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

/// Pearson correlation, centered two-pass form.
inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size()) throw DataError("pearson: length mismatch");
  if (n < 3) throw DataError("pearson: need at least 3 points");
  auto constant = [](std::span<const double> v) {
    for (double x : v)
      if (x != v[0]) return false;
    return true;
  };
  if (constant(xs) || constant(ys))
    throw DataError("pearson: zero variance, correlation undefined");
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw DataError("pearson: zero variance, correlation undefined");
  return sxy / std::sqrt(sxx * syy);
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (Lentz's
/// method, as in the standard numerical literature).
inline double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
  const double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
  return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

/// Two-sided p-value for a Student-t statistic with df degrees of freedom:
/// 2 P(T >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw DataError("t-test: non-positive degrees of freedom");
  if (t == 0.0) return 1.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
};

enum class TTestKind {
  welch,    // unequal variances (default)
  student,  // pooled variance
};

/// Two-sample t-test of mean(a) - mean(b).
inline TTestResult t_test(std::span<const double> a, std::span<const double> b,
                          TTestKind kind = TTestKind::welch) {
  const std::size_t na = a.size(), nb = b.size();
  if (na < 2 || nb < 2) throw DataError("t-test: need >= 2 values per group");
  TTestResult r;
  r.mean_a = mean(a);
  r.mean_b = mean(b);
  const double va = sample_variance(a), vb = sample_variance(b);
  if (va == 0.0 && vb == 0.0) {
    if (r.mean_a == r.mean_b) throw DataError("t-test: zero variance");
    throw DataError("t-test: zero variance with unequal means");
  }
  const double dna = static_cast<double>(na), dnb = static_cast<double>(nb);
  if (kind == TTestKind::welch) {
    const double se2 = va / dna + vb / dnb;
    r.t = (r.mean_a - r.mean_b) / std::sqrt(se2);
    r.df = se2 * se2 /
           ((va / dna) * (va / dna) / (dna - 1.0) +
            (vb / dnb) * (vb / dnb) / (dnb - 1.0));
  } else {
    const double pooled =
        ((dna - 1.0) * va + (dnb - 1.0) * vb) / (dna + dnb - 2.0);
    r.t = (r.mean_a - r.mean_b) / std::sqrt(pooled * (1.0 / dna + 1.0 / dnb));
    r.df = dna + dnb - 2.0;
  }
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

}  // namespace tweetmine
