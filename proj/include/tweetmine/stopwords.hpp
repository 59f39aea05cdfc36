#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "tweetmine/error.hpp"
#include "tweetmine/strings.hpp"

namespace tweetmine {

using StopwordSet = std::unordered_set<std::string>;

/// The shipped English stop-word list: function words (articles,
/// prepositions, pronouns, auxiliaries, common adverbs of degree), a few
/// high-frequency time words, and apostrophe-collapsed contraction forms
/// as they come out of the normalizer ("don't" -> "dont"). Content words
/// such as "see", "find", "use" and the determiner "none" are
/// deliberately absent.
inline const StopwordSet& default_stopwords() {
  static const StopwordSet set{
      "i",       "me",      "my",       "myself",  "we",       "our",
      "ours",    "ourselves", "you",    "your",    "yours",    "yourself",
      "yourselves", "he",   "him",      "his",     "himself",  "she",
      "her",     "hers",    "herself",  "it",      "its",      "itself",
      "they",    "them",    "their",    "theirs",  "themselves", "what",
      "which",   "who",     "whom",     "this",    "that",     "these",
      "those",   "am",      "is",       "are",     "was",      "were",
      "be",      "been",    "being",    "have",    "has",      "had",
      "having",  "do",      "does",     "did",     "doing",    "a",
      "an",      "the",     "and",      "but",     "if",       "or",
      "because", "as",      "until",    "while",   "of",       "at",
      "by",      "for",     "with",     "about",   "against",  "between",
      "into",    "through", "during",   "before",  "after",    "above",
      "below",   "to",      "from",     "up",      "down",     "in",
      "out",     "on",      "off",      "over",    "under",    "again",
      "further", "then",    "once",     "here",    "there",    "when",
      "where",   "why",     "how",      "all",     "any",      "both",
      "each",    "few",     "more",     "most",    "other",    "some",
      "such",    "no",      "nor",      "not",     "only",     "own",
      "same",    "so",      "than",     "too",     "very",     "s",
      "t",       "can",     "will",     "just",    "don",      "should",
      "now",     "next",    "year",
      // collapsed contractions
      "im",      "ive",     "youre",    "youve",   "youll",    "youd",
      "hes",     "shes",    "theyre",   "theyve",  "theyll",   "theyd",
      "whos",    "whats",   "thats",    "isnt",    "arent",    "wasnt",
      "werent",  "hasnt",   "havent",   "hadnt",   "doesnt",   "dont",
      "didnt",   "wont",    "wouldnt",  "shouldnt", "cant",    "cannot",
      "couldnt", "mustnt",  "lets",     "aint",
  };
  return set;
}

/// Loads a stop-word list, one word per line; '#' starts a comment.
/// Words are lower-cased on load.
inline StopwordSet load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open stop-word file: " + path);
  StopwordSet set;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto word = trim(line);
    if (!word.empty()) set.insert(to_lower_ascii(word));
  }
  return set;
}

}  // namespace tweetmine
