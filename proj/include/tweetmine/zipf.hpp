#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tweetmine/csv.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/stats.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

struct RankFrequencyEntry {
  std::string term;
  std::uint64_t count = 0;
  std::size_t rank = 0;  // 1-based, no gaps

  bool operator==(const RankFrequencyEntry&) const = default;
};

/// Terms ordered by frequency, ties broken lexicographically so the table
/// is a deterministic function of the corpus contents.
struct RankFrequencyTable {
  std::vector<RankFrequencyEntry> entries;

  std::uint64_t total_count() const {
    std::uint64_t t = 0;
    for (const auto& e : entries) t += e.count;
    return t;
  }

  std::vector<double> counts_by_rank() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(static_cast<double>(e.count));
    return out;
  }
};

inline RankFrequencyTable rank_frequency(std::span<const TokenDoc> docs) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TokenDoc& doc : docs)
    for (const std::string& tok : doc.tokens) ++counts[tok];
  if (counts.empty())
    throw DataError("rank_frequency: corpus has no tokens");
  RankFrequencyTable table;
  table.entries.reserve(counts.size());
  for (auto& [term, count] : counts)
    table.entries.push_back({term, count, 0});
  std::sort(table.entries.begin(), table.entries.end(),
            [](const RankFrequencyEntry& a, const RankFrequencyEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.term < b.term;
            });
  for (std::size_t i = 0; i < table.entries.size(); ++i)
    table.entries[i].rank = i + 1;
  return table;
}

namespace detail {

/// In-window rank range for a window of width fraction*(ln V) in ln-rank
/// space centered at the midpoint of [ln 1, ln V], inclusive bounds.
struct LogWindow {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(std::size_t rank) const {
    const double lr = std::log(static_cast<double>(rank));
    return lr >= lo && lr <= hi;
  }
};

inline LogWindow log_window(std::size_t n_ranks, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0)
    throw ConfigError("window fraction must lie in (0, 1]");
  const double ln_v = std::log(static_cast<double>(n_ranks));
  const double center = ln_v / 2.0;
  const double half = fraction * ln_v / 2.0;
  return {center - half, center + half};
}

inline void collect_window_points(std::span<const double> counts_by_rank,
                                  double fraction, std::vector<double>& lnr,
                                  std::vector<double>& lnc) {
  const LogWindow w = log_window(counts_by_rank.size(), fraction);
  for (std::size_t r = 1; r <= counts_by_rank.size(); ++r) {
    if (!w.contains(r)) continue;
    const double c = counts_by_rank[r - 1];
    if (!(c > 0.0)) throw DataError("rank table contains non-positive count");
    lnr.push_back(std::log(static_cast<double>(r)));
    lnc.push_back(std::log(c));
  }
}

}  // namespace detail

/// Pearson correlation of (ln rank, ln count) restricted to the centered
/// log-rank window of the given fractional width. counts_by_rank[i] is the
/// count at rank i+1.
inline double windowed_pearson(std::span<const double> counts_by_rank,
                               double fraction) {
  std::vector<double> lnr, lnc;
  detail::collect_window_points(counts_by_rank, fraction, lnr, lnc);
  if (lnr.size() < 3)
    throw DataError("windowed_pearson: fewer than 3 points in window");
  return pearson(lnr, lnc);
}

inline double windowed_pearson(const RankFrequencyTable& table,
                               double fraction) {
  return windowed_pearson(table.counts_by_rank(), fraction);
}

struct ZipfFit {
  double exponent = 0.0;   // slope of ln count vs ln rank
  double intercept = 0.0;  // ln count at rank 1 under the fit
  // (window fraction, signed pearson r), sorted by fraction
  std::vector<std::pair<double, double>> pearson_by_window;
};

/// Window used for the exponent estimate: the central 60% of the
/// logarithmic rank range, away from the artefacts at both ends.
inline constexpr double kZipfFitWindow = 0.6;

inline ZipfFit zipf_fit(std::span<const double> counts_by_rank,
                        std::span<const double> fractions) {
  ZipfFit fit;
  {
    std::vector<double> lnr, lnc;
    detail::collect_window_points(counts_by_rank, kZipfFitWindow, lnr, lnc);
    if (lnr.size() < 3)
      throw DataError("zipf_fit: fewer than 3 points in central window");
    const double mx = mean(lnr), my = mean(lnc);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lnr.size(); ++i) {
      sxy += (lnr[i] - mx) * (lnc[i] - my);
      sxx += (lnr[i] - mx) * (lnr[i] - mx);
    }
    if (sxx == 0.0) throw DataError("zipf_fit: degenerate rank range");
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
  }
  std::vector<double> sorted(fractions.begin(), fractions.end());
  std::sort(sorted.begin(), sorted.end());
  for (double f : sorted)
    fit.pearson_by_window.emplace_back(f, windowed_pearson(counts_by_rank, f));
  return fit;
}

inline ZipfFit zipf_fit(const RankFrequencyTable& table,
                        std::span<const double> fractions) {
  return zipf_fit(table.counts_by_rank(), fractions);
}

inline nlohmann::ordered_json zipf_fit_to_json(const ZipfFit& fit) {
  nlohmann::ordered_json j;
  j["exponent"] = fit.exponent;
  j["intercept"] = fit.intercept;
  auto windows = nlohmann::ordered_json::array();
  for (const auto& [fraction, r] : fit.pearson_by_window)
    windows.push_back({{"fraction", fraction}, {"r", r}, {"abs_r", std::fabs(r)}});
  j["pearson_by_window"] = windows;
  return j;
}

/// Two-column (ln rank, ln count) series for external plotting.
inline void write_loglog_points(const RankFrequencyTable& table,
                                std::ostream& out) {
  out << "# ln_rank\tln_count\n";
  for (const auto& e : table.entries)
    out << format_double(std::log(static_cast<double>(e.rank))) << '\t'
        << format_double(std::log(static_cast<double>(e.count))) << '\n';
}

}  // namespace tweetmine
