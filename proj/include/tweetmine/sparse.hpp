#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tweetmine/csv.hpp"
#include "tweetmine/error.hpp"
#include "tweetmine/textprep.hpp"
#include "tweetmine/vocabulary.hpp"

namespace tweetmine {

enum class Scheme { binary, count, tfidf };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::binary: return "binary";
    case Scheme::count: return "count";
    case Scheme::tfidf: return "tfidf";
  }
  return "?";
}

inline Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::binary, Scheme::count, Scheme::tfidf})
    if (name == scheme_name(s)) return s;
  throw ConfigError("unknown representation scheme: " + std::string(name));
}

struct SparseEntry {
  std::size_t index = 0;
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

/// Feature vector over a fixed vocabulary; indices strictly increasing,
/// values positive (zero-valued entries are omitted).
struct SparseVector {
  Scheme scheme = Scheme::count;
  std::vector<SparseEntry> entries;

  bool operator==(const SparseVector&) const = default;
};

enum class IdfKind {
  log_n_over_df,  // idf = ln(N / df), the standard form
  inverse_df,     // idf = 1 / df, the literal "inverse document count"
};

/// Per-term document-frequency weights, always computed on the training
/// corpus and reused verbatim for test-side vectors.
struct IdfTable {
  std::vector<double> idf;  // aligned with the vocabulary
  std::size_t n_docs = 0;
  IdfKind kind = IdfKind::log_n_over_df;
};

inline std::vector<std::uint64_t> document_frequencies(
    std::span<const TokenDoc> docs, const Vocabulary& vocab) {
  std::vector<std::uint64_t> df(vocab.size(), 0);
  std::vector<bool> seen(vocab.size(), false);
  for (const TokenDoc& doc : docs) {
    std::fill(seen.begin(), seen.end(), false);
    for (const std::string& tok : doc.tokens) {
      auto pos = vocab.position(tok);
      if (pos >= 0) seen[static_cast<std::size_t>(pos)] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i]) ++df[i];
  }
  return df;
}

inline IdfTable make_idf(std::span<const std::uint64_t> df, std::size_t n_docs,
                         IdfKind kind = IdfKind::log_n_over_df) {
  IdfTable t;
  t.n_docs = n_docs;
  t.kind = kind;
  t.idf.resize(df.size(), 0.0);
  for (std::size_t i = 0; i < df.size(); ++i) {
    if (df[i] == 0) continue;  // unseen terms vectorize to nothing anyway
    t.idf[i] = kind == IdfKind::log_n_over_df
                   ? std::log(static_cast<double>(n_docs) /
                              static_cast<double>(df[i]))
                   : 1.0 / static_cast<double>(df[i]);
  }
  return t;
}

/// Featurizes one doc. Out-of-vocabulary tokens are ignored. Under tfidf
/// a term present in every training doc has idf 0 and drops out of the
/// support entirely.
inline SparseVector vectorize(const TokenDoc& doc, const Vocabulary& vocab,
                              Scheme scheme,
                              const IdfTable* idf_table = nullptr) {
  if (scheme == Scheme::tfidf && idf_table == nullptr)
    throw ConfigError("tfidf vectorization requires an idf table");
  std::map<std::size_t, std::uint64_t> counts;
  for (const std::string& tok : doc.tokens) {
    auto pos = vocab.position(tok);
    if (pos >= 0) ++counts[static_cast<std::size_t>(pos)];
  }
  SparseVector v;
  v.scheme = scheme;
  v.entries.reserve(counts.size());
  for (const auto& [idx, count] : counts) {
    double value = 0.0;
    switch (scheme) {
      case Scheme::binary:
        value = 1.0;
        break;
      case Scheme::count:
        value = static_cast<double>(count);
        break;
      case Scheme::tfidf:
        value = static_cast<double>(count) * idf_table->idf[idx];
        break;
    }
    if (value > 0.0) v.entries.push_back({idx, value});
  }
  return v;
}

/// Featurized corpus with binary labels (+1 topic, -1 control).
struct LabeledDataset {
  std::vector<SparseVector> vectors;
  std::vector<int> labels;
  std::shared_ptr<const Vocabulary> vocab;
  IdfTable idf;
  Scheme scheme = Scheme::count;

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vocab ? vocab->size() : 0; }
};

/// Builds a dataset from training-side docs: document frequencies are
/// computed here and stored so test-side featurization cannot leak.
inline LabeledDataset featurize_corpus(
    std::span<const TokenDoc> docs, std::span<const int> labels,
    std::shared_ptr<const Vocabulary> vocab, Scheme scheme,
    IdfKind idf_kind = IdfKind::log_n_over_df) {
  if (docs.size() != labels.size())
    throw SchemaError("featurize_corpus: docs/labels length mismatch",
                      "labels");
  for (int y : labels)
    if (y != 1 && y != -1)
      throw SchemaError("labels must be +1 or -1", "labels");
  LabeledDataset ds;
  ds.vocab = std::move(vocab);
  ds.scheme = scheme;
  ds.idf = make_idf(document_frequencies(docs, *ds.vocab), docs.size(),
                    idf_kind);
  ds.vectors.reserve(docs.size());
  for (const TokenDoc& doc : docs)
    ds.vectors.push_back(vectorize(doc, *ds.vocab, scheme, &ds.idf));
  ds.labels.assign(labels.begin(), labels.end());
  return ds;
}

/// Featurizes docs against an existing vocabulary with a fixed idf table
/// (the training-side one).
inline LabeledDataset featurize_with_idf(
    std::span<const TokenDoc> docs, std::span<const int> labels,
    std::shared_ptr<const Vocabulary> vocab, Scheme scheme, IdfTable idf) {
  if (docs.size() != labels.size())
    throw SchemaError("featurize: docs/labels length mismatch", "labels");
  LabeledDataset ds;
  ds.vocab = std::move(vocab);
  ds.scheme = scheme;
  ds.idf = std::move(idf);
  ds.vectors.reserve(docs.size());
  for (const TokenDoc& doc : docs)
    ds.vectors.push_back(vectorize(doc, *ds.vocab, ds.scheme, &ds.idf));
  ds.labels.assign(labels.begin(), labels.end());
  return ds;
}

/// Featurizes evaluation docs against a training dataset's vocabulary and
/// idf table.
inline LabeledDataset featurize_with(std::span<const TokenDoc> docs,
                                     std::span<const int> labels,
                                     const LabeledDataset& train) {
  return featurize_with_idf(docs, labels, train.vocab, train.scheme,
                            train.idf);
}

/// Sparse text format: "label idx:val idx:val ...".
inline void write_dataset(const LabeledDataset& ds, std::ostream& out) {
  for (std::size_t i = 0; i < ds.vectors.size(); ++i) {
    out << (ds.labels[i] > 0 ? "+1" : "-1");
    for (const SparseEntry& e : ds.vectors[i].entries)
      out << ' ' << e.index << ':' << format_double(e.value);
    out << '\n';
  }
}

inline void write_dataset_file(const LabeledDataset& ds,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write dataset file: " + path);
  write_dataset(ds, out);
}

}  // namespace tweetmine
