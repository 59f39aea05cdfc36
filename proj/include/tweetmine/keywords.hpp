#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/stemmer.hpp"
#include "tweetmine/strings.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

/// The bootstrap keyword set that defines the topic/control split.
/// Keywords are lowercase alphanumeric, unique, and prefix-free (no
/// keyword may be a prefix of another, which would make suffixation
/// matching ambiguous).
class KeywordSet {
 public:
  KeywordSet() = default;

  explicit KeywordSet(std::vector<std::string> keywords)
      : keywords_(std::move(keywords)) {
    for (std::string& k : keywords_) k = to_lower_ascii(k);
    for (const std::string& k : keywords_) {
      if (k.empty()) throw ConfigError("keyword must be non-empty");
      for (char c : k)
        if (!is_ascii_lower(c) && !is_ascii_digit(c))
          throw ConfigError("keyword must be lowercase alphanumeric: " + k);
    }
    auto sorted = keywords_;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1])
        throw ConfigError("duplicate keyword: " + sorted[i]);
      if (sorted[i].starts_with(sorted[i - 1]))
        throw ConfigError("keyword '" + sorted[i - 1] +
                          "' is a prefix of keyword '" + sorted[i] + "'");
    }
  }

  static KeywordSet parse_csv(std::string_view csv) {
    std::vector<std::string> out;
    for (const std::string& part : split_char(csv, ',')) {
      auto t = trim(part);
      if (!t.empty()) out.emplace_back(t);
    }
    return KeywordSet(std::move(out));
  }

  const std::vector<std::string>& keywords() const noexcept {
    return keywords_;
  }
  bool empty() const noexcept { return keywords_.empty(); }
  std::size_t size() const noexcept { return keywords_.size(); }

  /// True iff some keyword is a prefix of the (lowercase) token.
  bool matches_token(std::string_view token) const {
    for (const std::string& k : keywords_)
      if (token.starts_with(k)) return true;
    return false;
  }

  KeywordSet without(std::string_view keyword) const {
    std::vector<std::string> rest;
    for (const std::string& k : keywords_)
      if (k != keyword) rest.push_back(k);
    return KeywordSet(std::move(rest));
  }

  /// Keyword set augmented with the stemmed form of each keyword and
  /// reduced to its prefix-minimal elements. Needed when matching against
  /// stemmed tokens: e.g. "asperger" stems to "asperg", which the raw
  /// keyword would no longer match by prefix.
  KeywordSet with_stemmed_forms() const {
    std::vector<std::string> all = keywords_;
    for (const std::string& k : keywords_) {
      if (all_ascii_lower_alpha(k)) all.push_back(stem(k));
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::vector<std::string> minimal;
    for (const std::string& k : all) {
      if (minimal.empty() || !k.starts_with(minimal.back()))
        minimal.push_back(k);
    }
    return KeywordSet(std::move(minimal));
  }

 private:
  std::vector<std::string> keywords_;
};

namespace detail {

/// Calls `fn` for every maximal [a-z0-9] run of the lowercased text,
/// skipping URL tokens entirely.
template <typename Fn>
void for_each_alnum_token(std::string_view text, Fn&& fn) {
  for (std::string_view raw : split_whitespace(text)) {
    if (is_url_token(raw)) continue;
    std::string lower = to_lower_ascii(raw);
    std::size_t i = 0;
    while (i < lower.size()) {
      while (i < lower.size() &&
             !(is_ascii_lower(lower[i]) || is_ascii_digit(lower[i])))
        ++i;
      std::size_t start = i;
      while (i < lower.size() &&
             (is_ascii_lower(lower[i]) || is_ascii_digit(lower[i])))
        ++i;
      if (i > start)
        if (!fn(std::string_view(lower).substr(start, i - start))) return;
    }
  }
}

}  // namespace detail

/// Suffixation matching: true iff any maximal alphanumeric token of the
/// lowercased text starts with one of the keywords. '#'/'@' sigils act
/// as token separators and URL tokens are excluded from consideration.
inline bool matches_keywords(std::string_view text, const KeywordSet& ks) {
  bool hit = false;
  detail::for_each_alnum_token(text, [&](std::string_view tok) {
    if (ks.matches_token(tok)) {
      hit = true;
      return false;
    }
    return true;
  });
  return hit;
}

/// The subset of keywords matched by the text, in keyword-set order.
inline std::vector<std::string> matched_keywords(std::string_view text,
                                                 const KeywordSet& ks) {
  std::vector<bool> seen(ks.size(), false);
  detail::for_each_alnum_token(text, [&](std::string_view tok) {
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (!seen[i] && tok.starts_with(ks.keywords()[i])) seen[i] = true;
    return true;
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (seen[i]) out.push_back(ks.keywords()[i]);
  return out;
}

}  // namespace tweetmine
