#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "tweetmine/error.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/record.hpp"

namespace tweetmine {

enum class Label { control = 0, topic = 1 };

inline const char* label_name(Label l) {
  return l == Label::topic ? "topic" : "control";
}

struct LabeledCorpus {
  std::vector<TweetRecord> records;
  Label label = Label::control;
  std::string provenance;
};

struct CorpusStats {
  std::size_t n_total = 0;
  std::size_t n_original = 0;
  std::size_t n_retweets = 0;
  std::size_t n_with_hashtags = 0;
  std::size_t n_geo = 0;
  std::size_t n_with_urls = 0;
  std::size_t n_replies = 0;
  std::size_t n_with_mentions = 0;
  std::size_t n_unique_users = 0;

  bool operator==(const CorpusStats&) const = default;
};

inline void to_json(nlohmann::ordered_json& j, const CorpusStats& s) {
  j = {{"n_total", s.n_total},
       {"n_original", s.n_original},
       {"n_retweets", s.n_retweets},
       {"n_with_hashtags", s.n_with_hashtags},
       {"n_geo", s.n_geo},
       {"n_with_urls", s.n_with_urls},
       {"n_replies", s.n_replies},
       {"n_with_mentions", s.n_with_mentions},
       {"n_unique_users", s.n_unique_users}};
}

/// Splits records into the topic corpus (keyword match) and the control
/// corpus (everything else), preserving input order. Duplicate ids are
/// rejected rather than silently deduplicated.
inline std::pair<LabeledCorpus, LabeledCorpus> split_corpus(
    const std::vector<TweetRecord>& records, const KeywordSet& ks) {
  LabeledCorpus topic{{}, Label::topic, ""};
  LabeledCorpus control{{}, Label::control, ""};
  std::unordered_set<std::string> ids;
  ids.reserve(records.size());
  for (const TweetRecord& rec : records) {
    if (!ids.insert(rec.id).second)
      throw DataError("duplicate record id: " + rec.id);
    if (matches_keywords(rec.text, ks))
      topic.records.push_back(rec);
    else
      control.records.push_back(rec);
  }
  return {std::move(topic), std::move(control)};
}

inline CorpusStats corpus_stats(const LabeledCorpus& c) {
  CorpusStats s;
  std::unordered_set<std::string> users;
  for (const TweetRecord& rec : c.records) {
    ++s.n_total;
    if (rec.is_retweet)
      ++s.n_retweets;
    else
      ++s.n_original;
    if (!rec.hashtags.empty()) ++s.n_with_hashtags;
    if (rec.geo) ++s.n_geo;
    if (!rec.urls.empty()) ++s.n_with_urls;
    if (rec.in_reply_to) ++s.n_replies;
    if (!rec.mentions.empty()) ++s.n_with_mentions;
    if (!rec.author_id.empty()) users.insert(rec.author_id);
  }
  s.n_unique_users = users.size();
  return s;
}

struct ReadOptions {
  // When non-empty, records carrying a lang tag that does not match this
  // prefix are dropped; records without a lang tag are kept.
  std::string lang_filter = "en";
};

inline bool lang_matches(const std::string& lang, const std::string& filter) {
  if (lang.empty() || filter.empty()) return true;
  return lang == filter || lang.starts_with(filter + "-");
}

/// Reads NDJSON records from a stream. Empty lines are skipped; any
/// malformed line aborts with a ParseError identifying the line.
inline std::vector<TweetRecord> read_ndjson(std::istream& in,
                                            const ReadOptions& opts = {}) {
  std::vector<TweetRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      TweetRecord rec = parse_record(line);
      if (lang_matches(rec.lang, opts.lang_filter))
        records.push_back(std::move(rec));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(),
                       e.byte_offset());
    }
  }
  return records;
}

inline std::vector<TweetRecord> read_ndjson_file(const std::string& path,
                                                 const ReadOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path);
  return read_ndjson(in, opts);
}

inline void write_ndjson(const std::vector<TweetRecord>& records,
                         std::ostream& out) {
  for (const TweetRecord& rec : records) out << serialize_record(rec) << '\n';
}

inline void write_ndjson_file(const std::vector<TweetRecord>& records,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file: " + path);
  write_ndjson(records, out);
}

/// Corpus cache layout: one NDJSON file per label plus a stats JSON file.
inline void write_corpus_cache(const std::string& dir,
                               const LabeledCorpus& topic,
                               const LabeledCorpus& control,
                               const KeywordSet& ks) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory: " + dir);
  write_ndjson_file(topic.records, dir + "/topic.ndjson");
  write_ndjson_file(control.records, dir + "/control.ndjson");

  nlohmann::ordered_json stats;
  stats["keywords"] = ks.keywords();
  to_json(stats["topic"], corpus_stats(topic));
  to_json(stats["control"], corpus_stats(control));
  std::ofstream out(dir + "/stats.json");
  if (!out) throw DataError("cannot write stats file in " + dir);
  out << stats.dump(2) << '\n';
}

inline LabeledCorpus load_corpus_cache(const std::string& dir, Label label) {
  LabeledCorpus c;
  c.label = label;
  c.provenance = dir;
  // the cache is already language-filtered
  c.records = read_ndjson_file(
      dir + "/" + label_name(label) + ".ndjson", ReadOptions{""});
  return c;
}

}  // namespace tweetmine
