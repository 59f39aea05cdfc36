#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/stats.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

/// Tweet-length distribution with the log-domain moments used for the
/// log-normal comparison. The histogram covers every doc (including
/// empty ones); the log statistics cover docs with at least one token.
struct LengthSummary {
  std::map<std::size_t, std::size_t> histogram;  // token count -> doc count
  double log_mean = 0.0;
  double log_sd = 0.0;
  std::size_t n_docs = 0;
  std::size_t n_nonempty = 0;
};

inline std::vector<double> log_lengths(std::span<const TokenDoc> docs) {
  std::vector<double> out;
  out.reserve(docs.size());
  for (const TokenDoc& d : docs)
    if (!d.tokens.empty())
      out.push_back(std::log(static_cast<double>(d.tokens.size())));
  return out;
}

inline LengthSummary length_summary(std::span<const TokenDoc> docs) {
  LengthSummary s;
  s.n_docs = docs.size();
  for (const TokenDoc& d : docs) ++s.histogram[d.tokens.size()];
  std::vector<double> ln = log_lengths(docs);
  s.n_nonempty = ln.size();
  if (!ln.empty()) {
    s.log_mean = mean(ln);
    s.log_sd = ln.size() > 1 ? std::sqrt(sample_variance(ln)) : 0.0;
  }
  return s;
}

/// Welch (default) or pooled-Student t-test on per-tweet ln(token count);
/// zero-length docs are excluded.
inline TTestResult length_t_test(std::span<const TokenDoc> a,
                                 std::span<const TokenDoc> b,
                                 TTestKind kind = TTestKind::welch) {
  std::vector<double> la = log_lengths(a), lb = log_lengths(b);
  if (la.empty() || lb.empty())
    throw DataError("length_t_test: a corpus has no non-empty docs");
  return t_test(la, lb, kind);
}

}  // namespace tweetmine
