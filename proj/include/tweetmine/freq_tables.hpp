#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tweetmine/corpus.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

struct TermCount {
  std::string term;
  std::uint64_t count = 0;

  bool operator==(const TermCount&) const = default;
};

namespace detail {

inline std::vector<TermCount> top_counts(
    std::unordered_map<std::string, std::uint64_t>& counts, std::size_t top_k,
    const KeywordSet& exclude) {
  std::vector<TermCount> all;
  all.reserve(counts.size());
  for (auto& [term, count] : counts) {
    if (exclude.matches_token(term)) continue;
    all.push_back({term, count});
  }
  std::sort(all.begin(), all.end(), [](const TermCount& a, const TermCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.term < b.term;
  });
  if (all.size() > top_k) all.resize(top_k);
  return all;
}

}  // namespace detail

/// Top-k most frequent terms, with terms matching the exclusion set by
/// prefix removed first.
inline std::vector<TermCount> term_table(std::span<const TokenDoc> docs,
                                         std::size_t top_k,
                                         const KeywordSet& exclude = {}) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TokenDoc& d : docs)
    for (const std::string& t : d.tokens) ++counts[t];
  return detail::top_counts(counts, top_k, exclude);
}

/// Top-k hashtags over the corpus records, with keyword-prefixed tags
/// excluded (the search keywords would otherwise dominate the table).
inline std::vector<TermCount> hashtag_table(const LabeledCorpus& corpus,
                                            std::size_t top_k,
                                            const KeywordSet& exclude = {}) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const TweetRecord& rec : corpus.records)
    for (const std::string& tag : rec.hashtags) ++counts[tag];
  return detail::top_counts(counts, top_k, exclude);
}

/// Term-count index over a corpus, reused by the discriminativeness score
/// and the vocabulary builder.
struct TermIndex {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  explicit TermIndex(std::span<const TokenDoc> docs) {
    for (const TokenDoc& d : docs)
      for (const std::string& t : d.tokens) {
        ++counts[t];
        ++total;
      }
  }

  std::uint64_t count(const std::string& term) const {
    auto it = counts.find(term);
    return it == counts.end() ? 0 : it->second;
  }
};

/// |ln( p(term|topic) / p(term|control) )| with add-one smoothing over the
/// shared vocabulary. Symmetric in the two corpora and zero iff the
/// smoothed relative frequencies coincide.
class DiscriminativenessScorer {
 public:
  DiscriminativenessScorer(TermIndex topic, TermIndex control)
      : topic_(std::move(topic)), control_(std::move(control)) {
    std::size_t shared = topic_.counts.size();
    for (const auto& [t, c] : control_.counts)
      if (!topic_.counts.count(t)) ++shared;
    vocab_size_ = static_cast<double>(shared);
  }

  DiscriminativenessScorer(std::span<const TokenDoc> topic_docs,
                           std::span<const TokenDoc> control_docs)
      : DiscriminativenessScorer(TermIndex(topic_docs),
                                 TermIndex(control_docs)) {}

  double score(const std::string& term) const {
    if (!topic_.counts.count(term) && !control_.counts.count(term))
      throw DataError("term not in the combined vocabulary: " + term);
    const double pt = (static_cast<double>(topic_.count(term)) + 1.0) /
                      (static_cast<double>(topic_.total) + vocab_size_);
    const double pc = (static_cast<double>(control_.count(term)) + 1.0) /
                      (static_cast<double>(control_.total) + vocab_size_);
    return std::fabs(std::log(pt / pc));
  }

  const TermIndex& topic() const { return topic_; }
  const TermIndex& control() const { return control_; }

 private:
  TermIndex topic_;
  TermIndex control_;
  double vocab_size_ = 0.0;
};

inline double discriminativeness(std::span<const TokenDoc> topic_docs,
                                 std::span<const TokenDoc> control_docs,
                                 const std::string& term) {
  return DiscriminativenessScorer(topic_docs, control_docs).score(term);
}

}  // namespace tweetmine
