#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tweetmine/error.hpp"
#include "tweetmine/strings.hpp"
#include "tweetmine/textprep.hpp"

namespace tweetmine {

struct Geo {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const Geo&) const = default;
};

/// One raw message with its metadata. Hashtags are stored lowercase and
/// sigil-free; geo coordinates are range-checked on construction.
struct TweetRecord {
  std::string id;
  std::string text;
  std::string created_at;  // ISO-8601 UTC, empty when absent
  std::string author_id;
  bool is_retweet = false;
  std::string lang;  // BCP-47 tag, empty when absent
  std::vector<std::string> hashtags;
  std::vector<std::string> mentions;
  std::vector<std::string> urls;
  std::optional<Geo> geo;
  std::optional<std::string> in_reply_to;

  bool operator==(const TweetRecord&) const = default;
};

namespace detail {

inline std::string json_to_id(const nlohmann::json& v, const char* field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer())
    return std::to_string(v.get<long long>());
  if (v.is_number_unsigned())
    return std::to_string(v.get<unsigned long long>());
  throw SchemaError(std::string("field '") + field +
                        "' must be a string or integer",
                    field);
}

inline std::vector<std::string> json_to_string_list(const nlohmann::json& v,
                                                    const char* field) {
  std::vector<std::string> out;
  if (!v.is_array())
    throw SchemaError(std::string("field '") + field + "' must be an array",
                      field);
  for (const auto& item : v) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_object()) {
      // tolerate Twitter-API style entity objects
      for (const char* key : {"text", "screen_name", "expanded_url", "url"}) {
        if (item.contains(key) && item[key].is_string()) {
          out.push_back(item[key].get<std::string>());
          break;
        }
      }
    }
  }
  return out;
}

inline std::string canonical_hashtag(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size() && raw[i] == '#') ++i;
  return to_lower_ascii(raw.substr(i));
}

}  // namespace detail

/// Parses one NDJSON line into a TweetRecord. When the line carries no
/// "entities" object, hashtags/mentions/urls are extracted from the text
/// ('#'-prefixed tokens, '@'-prefixed tokens, http(s) tokens). Unknown
/// fields are ignored.
inline TweetRecord parse_record(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw SchemaError("record is not a JSON object", "");
  if (!j.contains("id")) throw SchemaError("missing required field 'id'", "id");
  if (!j.contains("text") || !j["text"].is_string())
    throw SchemaError("missing required field 'text'", "text");

  TweetRecord rec;
  rec.id = detail::json_to_id(j["id"], "id");
  rec.text = j["text"].get<std::string>();
  if (trim(rec.text).empty())
    throw SchemaError("field 'text' is empty", "text");

  if (j.contains("created_at") && j["created_at"].is_string())
    rec.created_at = j["created_at"].get<std::string>();
  if (j.contains("user") && j["user"].is_object() && j["user"].contains("id"))
    rec.author_id = detail::json_to_id(j["user"]["id"], "user.id");
  else if (j.contains("author_id"))
    rec.author_id = detail::json_to_id(j["author_id"], "author_id");
  if (j.contains("retweeted") && j["retweeted"].is_boolean())
    rec.is_retweet = j["retweeted"].get<bool>();
  if (j.contains("lang") && j["lang"].is_string())
    rec.lang = to_lower_ascii(j["lang"].get<std::string>());

  if (j.contains("entities") && j["entities"].is_object()) {
    const auto& e = j["entities"];
    if (e.contains("hashtags"))
      for (const auto& h :
           detail::json_to_string_list(e["hashtags"], "entities.hashtags"))
        rec.hashtags.push_back(detail::canonical_hashtag(h));
    if (e.contains("mentions"))
      rec.mentions =
          detail::json_to_string_list(e["mentions"], "entities.mentions");
    if (e.contains("urls"))
      rec.urls = detail::json_to_string_list(e["urls"], "entities.urls");
  } else {
    for (std::string_view tok : split_whitespace(rec.text)) {
      if (detail::is_url_token(tok)) {
        rec.urls.emplace_back(tok);
      } else if (detail::is_mention_token(tok)) {
        std::size_t at = tok.find('@');
        std::string name(tok.substr(at + 1));
        while (!name.empty() && !is_ascii_alnum(name.back()) &&
               name.back() != '_')
          name.pop_back();
        if (!name.empty()) rec.mentions.push_back(std::move(name));
      } else if (tok.size() > 1 && tok[0] == '#') {
        std::string tag = detail::canonical_hashtag(tok);
        while (!tag.empty() && !is_ascii_alnum(tag.back()) && tag.back() != '_')
          tag.pop_back();
        if (!tag.empty()) rec.hashtags.push_back(std::move(tag));
      }
    }
  }
  for (std::string& h : rec.hashtags) h = detail::canonical_hashtag(h);

  if (j.contains("geo") && !j["geo"].is_null()) {
    const auto& g = j["geo"];
    if (!g.is_object() || !g.contains("lat") || !g.contains("lon") ||
        !g["lat"].is_number() || !g["lon"].is_number())
      throw SchemaError("field 'geo' must be an object with lat/lon", "geo");
    Geo geo{g["lat"].get<double>(), g["lon"].get<double>()};
    if (geo.lat < -90.0 || geo.lat > 90.0 || geo.lon < -180.0 ||
        geo.lon > 180.0)
      throw SchemaError("geo coordinates out of range", "geo");
    rec.geo = geo;
  }
  if (j.contains("in_reply_to") && !j["in_reply_to"].is_null())
    rec.in_reply_to = detail::json_to_id(j["in_reply_to"], "in_reply_to");
  return rec;
}

/// Serializes a record to one NDJSON line using the canonical field
/// names. The entities object is always written, so reparsing never
/// re-extracts from text and parse/serialize round-trips exactly.
inline std::string serialize_record(const TweetRecord& rec) {
  nlohmann::ordered_json j;
  j["id"] = rec.id;
  j["text"] = rec.text;
  if (!rec.created_at.empty()) j["created_at"] = rec.created_at;
  if (!rec.author_id.empty()) j["user"] = {{"id", rec.author_id}};
  j["retweeted"] = rec.is_retweet;
  if (!rec.lang.empty()) j["lang"] = rec.lang;
  j["entities"] = {{"hashtags", rec.hashtags},
                   {"mentions", rec.mentions},
                   {"urls", rec.urls}};
  if (rec.geo) j["geo"] = {{"lat", rec.geo->lat}, {"lon", rec.geo->lon}};
  if (rec.in_reply_to) j["in_reply_to"] = *rec.in_reply_to;
  return j.dump();
}

}  // namespace tweetmine
