#pragma once

#include <istream>
#include <map>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/stats.hpp"
#include "tweetmine/strings.hpp"

namespace tweetmine {

/// Declared tag alphabet for POS annotations; membership is enforced when
/// annotation dumps are ingested.
class Tagset {
 public:
  Tagset() = default;
  explicit Tagset(std::vector<std::string> tags) {
    for (std::string& t : tags) {
      if (t.empty()) throw ConfigError("empty POS tag in tagset");
      tags_.insert(std::move(t));
    }
    if (tags_.empty()) throw ConfigError("tagset must not be empty");
  }

  /// The ARK TweetNLP coarse tagset, the de-facto standard for tweets.
  static const Tagset& tweet_nlp() {
    static const Tagset ts(std::vector<std::string>{
        "N", "O", "^", "S", "Z", "V", "A", "R", "!", "D", "P", "&", "T",
        "X", "#", "@", "~", "U", "E", "$", ",", "G", "L", "M", "Y"});
    return ts;
  }

  bool contains(const std::string& tag) const { return tags_.count(tag) > 0; }
  std::size_t size() const { return tags_.size(); }

 private:
  std::unordered_set<std::string> tags_;
};

struct TaggedToken {
  std::string token;
  std::string tag;
};

struct PosAnnotatedDoc {
  std::string tweet_id;
  std::vector<TaggedToken> tagged;
};

/// Reads an external tagger dump: one line per token as
/// "tweet_id<TAB>token<TAB>tag", blank line between tweets.
inline std::vector<PosAnnotatedDoc> read_pos_annotations(std::istream& in,
                                                         const Tagset& tagset) {
  std::vector<PosAnnotatedDoc> docs;
  PosAnnotatedDoc current;
  std::string line;
  std::size_t lineno = 0;
  auto flush = [&] {
    if (!current.tagged.empty()) docs.push_back(std::move(current));
    current = {};
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) {
      flush();
      continue;
    }
    auto parts = split_char(line, '\t');
    if (parts.size() != 3)
      throw SchemaError("pos line " + std::to_string(lineno) +
                            ": expected tweet_id<TAB>token<TAB>tag",
                        "pos");
    if (!tagset.contains(parts[2]))
      throw SchemaError("pos line " + std::to_string(lineno) +
                            ": tag '" + parts[2] + "' not in declared tagset",
                        "tag");
    if (!current.tagged.empty() && current.tweet_id != parts[0]) flush();
    current.tweet_id = parts[0];
    current.tagged.push_back({parts[1], parts[2]});
  }
  flush();
  return docs;
}

/// Per-doc proportion of tokens carrying the tag.
inline std::vector<double> pos_proportions(std::span<const PosAnnotatedDoc> docs,
                                           const std::string& tag) {
  std::vector<double> out;
  out.reserve(docs.size());
  for (const PosAnnotatedDoc& d : docs) {
    if (d.tagged.empty()) continue;
    std::size_t hits = 0;
    for (const TaggedToken& t : d.tagged)
      if (t.tag == tag) ++hits;
    out.push_back(static_cast<double>(hits) /
                  static_cast<double>(d.tagged.size()));
  }
  return out;
}

inline TTestResult pos_t_test(std::span<const PosAnnotatedDoc> a,
                              std::span<const PosAnnotatedDoc> b,
                              const std::string& tag,
                              TTestKind kind = TTestKind::welch) {
  std::vector<double> pa = pos_proportions(a, tag);
  std::vector<double> pb = pos_proportions(b, tag);
  if (pa.empty() || pb.empty())
    throw DataError("pos_t_test: a group has no annotated docs");
  return t_test(pa, pb, kind);
}

struct PosLengthBin {
  std::size_t length = 0;  // tweet length in tokens
  std::size_t n = 0;       // docs of that length
  double mean = 0.0;       // mean tag proportion
  double sd = 0.0;         // standard deviation of the proportion
  double se = 0.0;         // standard error of the mean
};

/// Mean tag proportion binned by tweet length, with both dispersion
/// measures emitted.
inline std::vector<PosLengthBin> pos_binned_means(
    std::span<const PosAnnotatedDoc> docs, const std::string& tag) {
  std::map<std::size_t, std::vector<double>> by_length;
  for (const PosAnnotatedDoc& d : docs) {
    if (d.tagged.empty()) continue;
    std::size_t hits = 0;
    for (const TaggedToken& t : d.tagged)
      if (t.tag == tag) ++hits;
    by_length[d.tagged.size()].push_back(
        static_cast<double>(hits) / static_cast<double>(d.tagged.size()));
  }
  std::vector<PosLengthBin> bins;
  for (auto& [len, props] : by_length) {
    PosLengthBin bin;
    bin.length = len;
    bin.n = props.size();
    bin.mean = mean(props);
    if (props.size() > 1) {
      bin.sd = std::sqrt(sample_variance(props));
      bin.se = bin.sd / std::sqrt(static_cast<double>(props.size()));
    }
    bins.push_back(bin);
  }
  return bins;
}

}  // namespace tweetmine
