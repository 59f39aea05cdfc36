#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "tweetmine/error.hpp"
#include "tweetmine/stemmer.hpp"
#include "tweetmine/stopwords.hpp"
#include "tweetmine/strings.hpp"

namespace tweetmine {

/// Preprocessed form of one tweet: the ordered term sequence that every
/// downstream statistic and classifier consumes.
struct TokenDoc {
  std::string tweet_id;
  std::vector<std::string> tokens;

  bool operator==(const TokenDoc&) const = default;
};

struct PipelineConfig {
  const StopwordSet* stopwords = &default_stopwords();
  std::size_t min_token_len = 2;     // digit-only tokens are exempt
  std::string url_token = "url";     // canonical replacement for URLs
  std::string mention_token = "atus";  // canonical replacement for @user
  bool stem_enabled = true;

  void validate() const {
    if (min_token_len < 1) throw ConfigError("min_token_len must be >= 1");
    if (url_token.empty() || mention_token.empty())
      throw ConfigError("url_token and mention_token must be non-empty");
  }
};

namespace detail {

inline bool is_url_token(std::string_view tok) {
  auto starts_nocase = [&](std::string_view prefix) {
    if (tok.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (ascii_lower(tok[i]) != prefix[i]) return false;
    return true;
  };
  return starts_nocase("http://") || starts_nocase("https://") ||
         starts_nocase("www.");
}

// "@user" and the reply-widening ".@user" form.
inline bool is_mention_token(std::string_view tok) {
  std::size_t i = 0;
  if (i < tok.size() && tok[i] == '.') ++i;
  if (i >= tok.size() || tok[i] != '@') return false;
  ++i;
  return i < tok.size() && (is_ascii_alnum(tok[i]) || tok[i] == '_');
}

/// Decodes the common HTML entities tweet archives contain. Unknown
/// entities are kept verbatim.
inline std::string decode_html_entities(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '&') {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t semi = text.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 10) {
      out.push_back(text[i++]);
      continue;
    }
    std::string_view body = text.substr(i + 1, semi - i - 1);
    bool handled = true;
    if (body == "amp")
      out.push_back('&');
    else if (body == "lt")
      out.push_back('<');
    else if (body == "gt")
      out.push_back('>');
    else if (body == "quot")
      out.push_back('"');
    else if (body == "apos")
      out.push_back('\'');
    else if (body == "nbsp")
      out.push_back(' ');
    else if (body.size() > 1 && body[0] == '#') {
      char32_t cp = 0;
      bool ok = true;
      if (body[1] == 'x' || body[1] == 'X') {
        for (std::size_t k = 2; k < body.size(); ++k) {
          char c = ascii_lower(body[k]);
          if (is_ascii_digit(c))
            cp = cp * 16 + static_cast<char32_t>(c - '0');
          else if (c >= 'a' && c <= 'f')
            cp = cp * 16 + static_cast<char32_t>(c - 'a' + 10);
          else {
            ok = false;
            break;
          }
        }
        ok = ok && body.size() > 2;
      } else {
        for (std::size_t k = 1; k < body.size(); ++k) {
          if (!is_ascii_digit(body[k])) {
            ok = false;
            break;
          }
          cp = cp * 10 + static_cast<char32_t>(body[k] - '0');
        }
      }
      if (ok && cp > 0 && cp <= 0x10FFFF)
        append_utf8(out, cp);
      else
        handled = false;
    } else {
      handled = false;
    }
    if (handled)
      i = semi + 1;
    else
      out.push_back(text[i++]);
  }
  return out;
}

// Non-ASCII punctuation and symbol ranges stripped alongside ASCII
// punctuation. Letters of any script pass through untouched.
inline bool is_stripped_codepoint(char32_t cp) {
  if (cp >= 0x2018 && cp <= 0x201F) return true;  // curly quotes
  if (cp == 0x2026) return true;                  // ellipsis
  if (cp >= 0x00A1 && cp <= 0x00BF) return true;  // latin-1 punct/symbols
  if (cp >= 0x2030 && cp <= 0x205E) return true;  // general punctuation
  if (cp >= 0x2600 && cp <= 0x27BF) return true;  // misc symbols, dingbats
  if (cp >= 0x1F000 && cp <= 0x1FAFF) return true;  // emoji planes
  if (cp == 0xFFFD) return true;
  return false;
}

inline bool is_dash_codepoint(char32_t cp) {
  return cp == '-' || (cp >= 0x2010 && cp <= 0x2015);
}

}  // namespace detail

/// Normalizes raw tweet text: HTML entities decoded, URLs and @-mentions
/// replaced by their canonical tokens, '#' sigils stripped, everything
/// lower-cased, hyphenated words split, punctuation/emoticons/emoji
/// removed. Digit runs and non-Latin scripts pass through. Returns the
/// space-joined token string.
inline std::string normalize(std::string_view text,
                             const PipelineConfig& cfg = {}) {
  std::string decoded = detail::decode_html_entities(text);
  std::vector<std::string> out;
  for (std::string_view raw : split_whitespace(decoded)) {
    if (detail::is_url_token(raw)) {
      out.push_back(cfg.url_token);
      continue;
    }
    if (detail::is_mention_token(raw)) {
      out.push_back(cfg.mention_token);
      continue;
    }
    std::string cleaned;
    cleaned.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
      char32_t cp = decode_utf8(raw, i);
      if (cp < 0x80) {
        char c = ascii_lower(static_cast<char>(cp));
        if (is_ascii_alnum(c))
          cleaned.push_back(c);
        else if (detail::is_dash_codepoint(cp))
          cleaned.push_back(' ');
        // other ASCII punctuation: dropped ('#' sigils included)
      } else if (detail::is_dash_codepoint(cp)) {
        cleaned.push_back(' ');
      } else if (!detail::is_stripped_codepoint(cp)) {
        append_utf8(cleaned, cp);
      }
    }
    for (std::string_view piece : split_whitespace(cleaned))
      out.emplace_back(piece);
  }
  return join(out, " ");
}

/// Full preprocessing chain: normalize, tokenize, drop stop words and
/// too-short tokens, stem. Stop-word and length filters run again after
/// stemming so the published TokenDoc invariants hold on the output.
/// Canonical url/mention tokens are never stemmed.
inline TokenDoc preprocess(std::string_view tweet_id, std::string_view text,
                           const PipelineConfig& cfg = {}) {
  cfg.validate();
  TokenDoc doc;
  doc.tweet_id = std::string(tweet_id);
  std::string normalized = normalize(text, cfg);
  for (std::string_view tok : split_whitespace(normalized)) {
    std::string token(tok);
    if (cfg.stopwords->count(token)) continue;
    bool digits_only = all_ascii_digits(token);
    if (!digits_only && codepoint_length(token) < cfg.min_token_len) continue;
    if (cfg.stem_enabled && token != cfg.url_token &&
        token != cfg.mention_token && all_ascii_lower_alpha(token)) {
      token = stem(token);
      if (cfg.stopwords->count(token)) continue;
      if (codepoint_length(token) < cfg.min_token_len) continue;
    }
    doc.tokens.push_back(std::move(token));
  }
  return doc;
}

/// Token docs are stored one per line: tweet id, a tab, the space-joined
/// tokens. Empty docs keep their line so downstream counts stay honest.
inline void write_token_docs(const std::vector<TokenDoc>& docs,
                             std::ostream& out) {
  for (const TokenDoc& doc : docs) {
    out << doc.tweet_id << '\t';
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << doc.tokens[i];
    }
    out << '\n';
  }
}

inline void write_token_docs(const std::vector<TokenDoc>& docs,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write token file: " + path);
  write_token_docs(docs, out);
}

inline std::vector<TokenDoc> read_token_docs(std::istream& in) {
  std::vector<TokenDoc> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw SchemaError("token line missing tab separator", "tweet_id");
    TokenDoc doc;
    doc.tweet_id = line.substr(0, tab);
    for (std::string_view tok :
         split_whitespace(std::string_view(line).substr(tab + 1)))
      doc.tokens.emplace_back(tok);
    docs.push_back(std::move(doc));
  }
  return docs;
}

inline std::vector<TokenDoc> read_token_docs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open token file: " + path);
  return read_token_docs(in);
}

}  // namespace tweetmine
