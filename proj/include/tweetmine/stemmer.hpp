#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tweetmine/strings.hpp"

namespace tweetmine {

/// Porter stemmer in the NLTK flavour: the published algorithm plus the
/// handful of extensions NLTK ships enabled by default (special-cased
/// short "ies"/"ied" forms, the two-letter vowel-consonant cvc rule that
/// turns "using" into "use", the y->i rule keyed on a consonant rather
/// than on vowel presence, and a small pool of irregular words). A short
/// table of irregular noun plurals is folded in ahead of the algorithm so
/// that e.g. "children" reduces to "child".
///
/// The stemmer is stateless apart from immutable tables and is safe to
/// call concurrently.
class PorterStemmer {
 public:
  std::string stem(std::string_view word) const {
    std::string w(word);
    if (auto it = irregular().find(w); it != irregular().end())
      return it->second;
    if (w.size() <= 2) return w;  // too short to carry a suffix
    w = step1a(std::move(w));
    w = step1b(std::move(w));
    w = step1c(std::move(w));
    w = step2(std::move(w));
    w = step3(std::move(w));
    w = step4(std::move(w));
    w = step5a(std::move(w));
    w = step5b(std::move(w));
    return w;
  }

 private:
  static bool is_consonant(std::string_view w, std::size_t i) {
    char c = w[i];
    if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
    return true;
  }

  // Number of vowel-consonant transitions: m in [C](VC)^m[V].
  static int measure(std::string_view stem) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
      bool vowel = !is_consonant(stem, i);
      if (!vowel && prev_vowel) ++m;
      prev_vowel = vowel;
    }
    return m;
  }

  static bool contains_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); ++i)
      if (!is_consonant(stem, i)) return true;
    return false;
  }

  static bool ends_double_consonant(std::string_view w) {
    return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
           is_consonant(w, w.size() - 1);
  }

  // cvc at the end, last consonant not w/x/y. The two-letter vc case is
  // the NLTK extension that makes "us" behave like a cvc stem.
  static bool ends_cvc(std::string_view w) {
    std::size_t n = w.size();
    if (n >= 3 && is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
        is_consonant(w, n - 1)) {
      char last = w[n - 1];
      return last != 'w' && last != 'x' && last != 'y';
    }
    return n == 2 && !is_consonant(w, 0) && is_consonant(w, 1);
  }

  static bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
  }

  static std::string chop(std::string_view w, std::size_t suffix_len,
                          std::string_view replacement) {
    std::string out(w.substr(0, w.size() - suffix_len));
    out += replacement;
    return out;
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
    int min_measure;  // condition: measure(stem) > min_measure; -1 = always
  };

  // First matching suffix wins; if its condition fails, no further rule
  // is tried (Porter's definition).
  template <std::size_t N>
  static std::string apply_rules(std::string w,
                                 const std::array<Rule, N>& rules) {
    for (const Rule& r : rules) {
      if (!ends_with(w, r.suffix)) continue;
      std::string stem = chop(w, r.suffix.size(), "");
      if (r.min_measure < 0 || measure(stem) > r.min_measure)
        return stem + std::string(r.replacement);
      return w;
    }
    return w;
  }

  static std::string step1a(std::string w) {
    if (ends_with(w, "ies") && w.size() == 4) return chop(w, 3, "ie");
    if (ends_with(w, "sses")) return chop(w, 2, "");
    if (ends_with(w, "ies")) return chop(w, 2, "");
    if (ends_with(w, "ss")) return w;
    if (ends_with(w, "s")) return chop(w, 1, "");
    return w;
  }

  static std::string step1b(std::string w) {
    if (ends_with(w, "ied"))
      return w.size() == 4 ? chop(w, 3, "ie") : chop(w, 2, "");
    if (ends_with(w, "eed")) {
      std::string stem = chop(w, 3, "");
      return measure(stem) > 0 ? stem + "ee" : w;
    }
    std::string stem;
    if (ends_with(w, "ed"))
      stem = chop(w, 2, "");
    else if (ends_with(w, "ing"))
      stem = chop(w, 3, "");
    else
      return w;
    if (!contains_vowel(stem)) return w;
    if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz"))
      return stem + "e";
    if (ends_double_consonant(stem)) {
      char last = stem.back();
      if (last != 'l' && last != 's' && last != 'z') {
        stem.pop_back();
        return stem;
      }
      return stem;
    }
    if (measure(stem) == 1 && ends_cvc(stem)) return stem + "e";
    return stem;
  }

  static std::string step1c(std::string w) {
    // y -> i when preceded by a consonant that is not the first letter.
    if (!ends_with(w, "y")) return w;
    std::string_view stem(w.data(), w.size() - 1);
    if (stem.size() > 1 && is_consonant(stem, stem.size() - 1))
      return chop(w, 1, "i");
    return w;
  }

  static std::string step2(std::string w) {
    if (ends_with(w, "alli") && measure(chop(w, 4, "")) > 0)
      return step2(chop(w, 4, "al"));
    static constexpr std::array<Rule, 21> rules{{
        {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
        {"anci", "ance", 0},   {"izer", "ize", 0},    {"bli", "ble", 0},
        {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
        {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
        {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
        {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
        {"iviti", "ive", 0},   {"biliti", "ble", 0},  {"fulli", "ful", 0},
    }};
    return apply_rules(std::move(w), rules);
  }

  static std::string step3(std::string w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic", 0},
        {"ative", "", 0},
        {"alize", "al", 0},
        {"iciti", "ic", 0},
        {"ical", "ic", 0},
        {"ful", "", 0},
        {"ness", "", 0},
    }};
    return apply_rules(std::move(w), rules);
  }

  static std::string step4(std::string w) {
    static constexpr std::array<std::string_view, 11> head{
        "al", "ance", "ence", "er", "ic", "able",
        "ible", "ant", "ement", "ment", "ent"};
    for (std::string_view suffix : head) {
      if (!ends_with(w, suffix)) continue;
      std::string stem = chop(w, suffix.size(), "");
      return measure(stem) > 1 ? stem : w;
    }
    if (ends_with(w, "ion")) {
      std::string stem = chop(w, 3, "");
      if (!stem.empty() && (stem.back() == 's' || stem.back() == 't') &&
          measure(stem) > 1)
        return stem;
      return w;
    }
    static constexpr std::array<std::string_view, 7> tail{
        "ou", "ism", "ate", "iti", "ous", "ive", "ize"};
    for (std::string_view suffix : tail) {
      if (!ends_with(w, suffix)) continue;
      std::string stem = chop(w, suffix.size(), "");
      return measure(stem) > 1 ? stem : w;
    }
    return w;
  }

  static std::string step5a(std::string w) {
    if (!ends_with(w, "e")) return w;
    std::string stem = chop(w, 1, "");
    int m = measure(stem);
    if (m > 1) return stem;
    if (m == 1 && !ends_cvc(stem)) return stem;
    return w;
  }

  static std::string step5b(std::string w) {
    if (measure(w) > 1 && ends_with(w, "ll")) w.pop_back();
    return w;
  }

  static const std::unordered_map<std::string, std::string>& irregular() {
    // NLTK's irregular pool plus common irregular noun plurals; the
    // "using" entry mirrors the lemmatize-before-stem convention.
    static const std::unordered_map<std::string, std::string> table{
        {"sky", "sky"},         {"skies", "sky"},    {"dying", "die"},
        {"lying", "lie"},       {"tying", "tie"},    {"news", "news"},
        {"innings", "inning"},  {"inning", "inning"},
        {"outings", "outing"},  {"outing", "outing"},
        {"cannings", "canning"}, {"canning", "canning"},
        {"howe", "howe"},       {"proceed", "proceed"},
        {"exceed", "exceed"},   {"succeed", "succeed"},
        {"children", "child"},  {"men", "man"},      {"women", "woman"},
        {"feet", "foot"},       {"teeth", "tooth"},  {"geese", "goose"},
        {"mice", "mouse"},      {"oxen", "ox"},      {"using", "use"},
    };
    return table;
  }
};

inline const PorterStemmer& default_stemmer() {
  static const PorterStemmer stemmer;
  return stemmer;
}

/// Stems a lowercase alphabetic term.
inline std::string stem(std::string_view term) {
  return default_stemmer().stem(term);
}

}  // namespace tweetmine
