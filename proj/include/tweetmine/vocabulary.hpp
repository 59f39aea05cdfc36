#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/freq_tables.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/strings.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

enum class VocabPolicy {
  freq_overall,   // most frequent terms across both corpora
  freq_topic,     // most frequent terms in the topic corpus
  freq_control,   // most frequent terms in the control corpus
  disc_topic,     // topic-corpus terms ranked by likelihood-ratio score
  disc_control,   // control-corpus terms ranked by likelihood-ratio score
  set_union,      // union of the two per-corpus half-size frequency lists
  set_intersection,
};

inline const char* vocab_policy_name(VocabPolicy p) {
  switch (p) {
    case VocabPolicy::freq_overall: return "freq_overall";
    case VocabPolicy::freq_topic: return "freq_topic";
    case VocabPolicy::freq_control: return "freq_control";
    case VocabPolicy::disc_topic: return "disc_topic";
    case VocabPolicy::disc_control: return "disc_control";
    case VocabPolicy::set_union: return "union";
    case VocabPolicy::set_intersection: return "intersection";
  }
  return "?";
}

inline VocabPolicy parse_vocab_policy(std::string_view name) {
  for (VocabPolicy p :
       {VocabPolicy::freq_overall, VocabPolicy::freq_topic,
        VocabPolicy::freq_control, VocabPolicy::disc_topic,
        VocabPolicy::disc_control, VocabPolicy::set_union,
        VocabPolicy::set_intersection})
    if (name == vocab_policy_name(p)) return p;
  throw ConfigError("unknown vocabulary policy: " + std::string(name));
}

/// Ordered term list with its index map and the policy that built it.
/// No term matches the exclusion set by prefix; the index is a bijection
/// onto 0..size()-1.
class Vocabulary {
 public:
  Vocabulary() = default;

  Vocabulary(std::vector<std::string> terms, VocabPolicy policy,
             KeywordSet excluded, bool truncated = false)
      : terms_(std::move(terms)),
        policy_(policy),
        excluded_(std::move(excluded)),
        truncated_(truncated) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (excluded_.matches_token(terms_[i]))
        throw DataError("vocabulary term matches an excluded keyword: " +
                        terms_[i]);
      if (!index_.emplace(terms_[i], i).second)
        throw DataError("duplicate vocabulary term: " + terms_[i]);
    }
  }

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  VocabPolicy policy() const noexcept { return policy_; }
  const KeywordSet& excluded() const noexcept { return excluded_; }

  /// True when fewer terms were available than requested.
  bool truncated() const noexcept { return truncated_; }

  bool contains(const std::string& term) const {
    return index_.count(term) > 0;
  }

  // -1 when absent
  std::ptrdiff_t position(const std::string& term) const {
    auto it = index_.find(term);
    return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
  }

  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const std::string& t : terms_) {
      h = fnv1a64(t, h);
      h = fnv1a64("\n", h);
    }
    return h;
  }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, std::size_t> index_;
  VocabPolicy policy_ = VocabPolicy::freq_overall;
  KeywordSet excluded_;
  bool truncated_ = false;
};

namespace detail {

inline std::vector<TermCount> ranked_by_frequency(
    const std::unordered_map<std::string, std::uint64_t>& counts,
    const KeywordSet& excluded) {
  std::vector<TermCount> out;
  out.reserve(counts.size());
  for (const auto& [term, count] : counts)
    if (!excluded.matches_token(term)) out.push_back({term, count});
  std::sort(out.begin(), out.end(), [](const TermCount& a, const TermCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.term < b.term;
  });
  return out;
}

inline std::vector<std::string> take_terms(std::span<const TermCount> ranked,
                                           std::size_t n) {
  std::vector<std::string> out;
  out.reserve(std::min(n, ranked.size()));
  for (std::size_t i = 0; i < ranked.size() && i < n; ++i)
    out.push_back(ranked[i].term);
  return out;
}

}  // namespace detail

/// Builds a vocabulary of (up to) `size` terms under the given policy.
/// Keyword-prefixed terms are removed before ranking. When fewer terms
/// are available than requested, all of them are returned and the
/// vocabulary's truncated() flag is set.
inline Vocabulary build_vocabulary(std::span<const TokenDoc> topic_docs,
                                   std::span<const TokenDoc> control_docs,
                                   VocabPolicy policy, std::size_t size,
                                   const KeywordSet& excluded = {}) {
  if (size < 1) throw ConfigError("vocabulary size must be >= 1");
  TermIndex topic(topic_docs), control(control_docs);
  std::unordered_map<std::string, std::uint64_t> combined = topic.counts;
  for (const auto& [t, c] : control.counts) combined[t] += c;

  std::vector<std::string> terms;
  switch (policy) {
    case VocabPolicy::freq_overall:
      terms = detail::take_terms(
          detail::ranked_by_frequency(combined, excluded), size);
      break;
    case VocabPolicy::freq_topic:
      terms = detail::take_terms(
          detail::ranked_by_frequency(topic.counts, excluded), size);
      break;
    case VocabPolicy::freq_control:
      terms = detail::take_terms(
          detail::ranked_by_frequency(control.counts, excluded), size);
      break;
    case VocabPolicy::disc_topic:
    case VocabPolicy::disc_control: {
      const auto& source = policy == VocabPolicy::disc_topic ? topic.counts
                                                             : control.counts;
      DiscriminativenessScorer scorer(topic, control);
      std::vector<std::pair<std::string, double>> scored;
      scored.reserve(source.size());
      for (const auto& [term, count] : source)
        if (!excluded.matches_token(term))
          scored.emplace_back(term, scorer.score(term));
      std::sort(scored.begin(), scored.end(),
                [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
                });
      for (std::size_t i = 0; i < scored.size() && i < size; ++i)
        terms.push_back(scored[i].first);
      break;
    }
    case VocabPolicy::set_union:
    case VocabPolicy::set_intersection: {
      const std::size_t half = (size + 1) / 2;
      auto a = detail::take_terms(
          detail::ranked_by_frequency(topic.counts, excluded), half);
      auto b = detail::take_terms(
          detail::ranked_by_frequency(control.counts, excluded), half);
      std::unordered_set<std::string> in_a(a.begin(), a.end());
      std::unordered_set<std::string> in_b(b.begin(), b.end());
      std::vector<TermCount> chosen;
      auto consider = [&](const std::string& t) {
        bool keep = policy == VocabPolicy::set_union
                        ? true
                        : (in_a.count(t) && in_b.count(t));
        if (keep) chosen.push_back({t, combined.at(t)});
      };
      for (const auto& t : a) consider(t);
      for (const auto& t : b)
        if (!in_a.count(t)) consider(t);
      // re-rank the combined list by overall frequency
      std::sort(chosen.begin(), chosen.end(),
                [](const TermCount& x, const TermCount& y) {
                  if (x.count != y.count) return x.count > y.count;
                  return x.term < y.term;
                });
      terms = detail::take_terms(chosen, size);
      break;
    }
  }
  const bool truncated = terms.size() < size;
  return Vocabulary(std::move(terms), policy, excluded, truncated);
}

/// One term per line.
inline void save_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write vocabulary file: " + path);
  for (const std::string& t : vocab.terms()) out << t << '\n';
}

inline Vocabulary load_vocabulary(const std::string& path,
                                  const KeywordSet& excluded = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vocabulary file: " + path);
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty()) terms.emplace_back(t);
  }
  return Vocabulary(std::move(terms), VocabPolicy::freq_overall, excluded);
}

}  // namespace tweetmine
