#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <unordered_map>

#include "support/synthetic.hpp"
#include "tweetmine/sparse.hpp"
#include "tweetmine/vocabulary.hpp"

using namespace tweetmine;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<TokenDoc> docs_from(std::vector<std::vector<std::string>> tokens) {
  std::vector<TokenDoc> docs;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    docs.push_back({"d" + std::to_string(i), std::move(tokens[i])});
  return docs;
}

std::set<std::size_t> support(const SparseVector& v) {
  std::set<std::size_t> s;
  for (const auto& e : v.entries) s.insert(e.index);
  return s;
}

}  // namespace

TEST_CASE("build_vocabulary freq_overall ranks by combined counts") {
  const auto topic = docs_from({{"a", "a", "b", "c"}});
  const auto control = docs_from({{"c", "c"}});
  const auto v = build_vocabulary(topic, control, VocabPolicy::freq_overall,
                                  2, {});
  REQUIRE(v.size() == 2);
  CHECK(v.terms()[0] == "c");  // count 3
  CHECK(v.terms()[1] == "a");  // count 2
  CHECK(v.position("c") == 0);
  CHECK(v.position("zebra") == -1);
  CHECK_FALSE(v.truncated());
}

TEST_CASE("build_vocabulary removes keyword-prefixed terms everywhere") {
  const auto topic =
      docs_from({{"autism", "autismawareness", "help", "child"}});
  const auto control = docs_from({{"pizza", "autism", "game"}});
  const auto excl = KeywordSet({"autism"});
  for (VocabPolicy p :
       {VocabPolicy::freq_overall, VocabPolicy::freq_topic,
        VocabPolicy::freq_control, VocabPolicy::disc_topic,
        VocabPolicy::disc_control, VocabPolicy::set_union,
        VocabPolicy::set_intersection}) {
    const auto v = build_vocabulary(topic, control, p, 10, excl);
    for (const auto& t : v.terms()) {
      CHECK(t != "autism");
      CHECK(t != "autismawareness");
    }
  }
}

TEST_CASE("build_vocabulary disc_topic ranks by the likelihood-ratio score") {
  // the hand-computed discriminativeness corpus: x is maximally
  // discriminative, y equally so; both corpora share {x, y}
  std::vector<TokenDoc> topic(1), control(1);
  topic[0].tweet_id = "t";
  control[0].tweet_id = "c";
  for (int i = 0; i < 9; ++i) topic[0].tokens.push_back("x");
  topic[0].tokens.push_back("y");
  control[0].tokens.push_back("x");
  for (int i = 0; i < 9; ++i) control[0].tokens.push_back("y");
  const auto v =
      build_vocabulary(topic, control, VocabPolicy::disc_topic, 1, {});
  REQUIRE(v.size() == 1);
  CHECK(v.terms()[0] == "x");  // tie on score broken lexicographically
}

TEST_CASE("build_vocabulary union and intersection of half-size lists") {
  const auto topic = docs_from({{"t1", "t1", "t1", "s", "s", "t2"}});
  const auto control = docs_from({{"c1", "c1", "c1", "s", "s", "c2"}});
  const auto u =
      build_vocabulary(topic, control, VocabPolicy::set_union, 4, {});
  // half lists (2 each): topic {t1, s}, control {c1, s}; union re-ranked
  // by combined frequency: s(4), c1(3), t1(3)
  REQUIRE(u.size() == 3);
  CHECK(u.terms()[0] == "s");
  CHECK(u.terms()[1] == "c1");
  CHECK(u.terms()[2] == "t1");
  CHECK(u.truncated());  // only 3 available for the requested 4

  const auto i =
      build_vocabulary(topic, control, VocabPolicy::set_intersection, 4, {});
  REQUIRE(i.size() == 1);
  CHECK(i.terms()[0] == "s");
}

TEST_CASE("build_vocabulary is deterministic") {
  const auto corpus = synthetic::make_two_topic_corpus(200, 11, {"autism"});
  for (VocabPolicy p : {VocabPolicy::freq_overall, VocabPolicy::disc_topic,
                        VocabPolicy::set_union}) {
    const auto a =
        build_vocabulary(corpus.topic, corpus.control, p, 50, {});
    const auto b =
        build_vocabulary(corpus.topic, corpus.control, p, 50, {});
    CHECK(a.terms() == b.terms());
    CHECK(a.hash() == b.hash());
  }
}

TEST_CASE("build_vocabulary truncation warning when terms run out") {
  const auto topic = docs_from({{"a", "b"}});
  const auto control = docs_from({{"c"}});
  const auto v =
      build_vocabulary(topic, control, VocabPolicy::freq_overall, 99, {});
  CHECK(v.size() == 3);
  CHECK(v.truncated());
  CHECK_THROWS_AS(
      build_vocabulary(topic, control, VocabPolicy::freq_overall, 0, {}),
      ConfigError);
}

TEST_CASE("vocabulary rejects terms matching the exclusion set") {
  CHECK_THROWS_AS(Vocabulary({"autismday"}, VocabPolicy::freq_overall,
                             KeywordSet({"autism"})),
                  DataError);
  CHECK_THROWS_AS(
      Vocabulary({"a", "a"}, VocabPolicy::freq_overall, KeywordSet{}),
      DataError);
}

TEST_CASE("vectorize: the published worked vector") {
  // preprocessed tweet: "look like autism research happen child
  // earlyintervention visualsupports mobiletech"; with "autism" excluded
  // and the rare hashtag-born terms out of vocabulary, the binary vector
  // has ones exactly at {look, like, research, happen, child}
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"look", "like", "research", "happen", "child",
                               "parent", "school"},
      VocabPolicy::freq_overall, KeywordSet({"autism"}));
  TokenDoc doc{"ex1",
               {"look", "like", "autism", "research", "happen", "child",
                "earlyintervention", "visualsupports", "mobiletech"}};
  const auto v = vectorize(doc, *vocab, Scheme::binary);
  CHECK(support(v) == std::set<std::size_t>{0, 1, 2, 3, 4});
  for (const auto& e : v.entries) CHECK(e.value == 1.0);
}

TEST_CASE("vectorize: count doubles where binary clamps") {
  // published example 3 has "genet" twice
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"genet", "analysi", "individu"},
      VocabPolicy::freq_overall, KeywordSet{});
  TokenDoc doc{"ex3",
               {"101", "autism", "genet", "analysi", "individu", "autism",
                "find", "gene", "delet", "use", "power", "genet", "sequenc",
                "url"}};
  const auto counts = vectorize(doc, *vocab, Scheme::count);
  const auto binary = vectorize(doc, *vocab, Scheme::binary);
  REQUIRE(counts.entries.size() == 3);
  CHECK(counts.entries[0].value == 2.0);  // genet
  CHECK(binary.entries[0].value == 1.0);
  CHECK(support(counts) == support(binary));
}

TEST_CASE("vectorize: empty doc gives empty vectors in all schemes") {
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a"}, VocabPolicy::freq_overall, KeywordSet{});
  TokenDoc empty{"e", {}};
  IdfTable idf;
  idf.idf = {1.0};
  idf.n_docs = 1;
  CHECK(vectorize(empty, *vocab, Scheme::binary).entries.empty());
  CHECK(vectorize(empty, *vocab, Scheme::count).entries.empty());
  CHECK(vectorize(empty, *vocab, Scheme::tfidf, &idf).entries.empty());
}

TEST_CASE("vectorize: tfidf without an idf table is a configuration error") {
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a"}, VocabPolicy::freq_overall, KeywordSet{});
  TokenDoc doc{"d", {"a"}};
  CHECK_THROWS_AS(vectorize(doc, *vocab, Scheme::tfidf), ConfigError);
}

TEST_CASE("featurize_corpus computes df on the training side") {
  const auto docs = docs_from({{"a", "b"}, {"a"}, {"a", "c", "c"}});
  const std::vector<int> labels{+1, +1, -1};
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a", "b", "c"}, VocabPolicy::freq_overall,
      KeywordSet{});
  const auto ds = featurize_corpus(docs, labels, vocab, Scheme::tfidf);
  // df recount oracle
  const auto df = document_frequencies(docs, *vocab);
  CHECK(df == std::vector<std::uint64_t>{3, 1, 1});
  CHECK_THAT(ds.idf.idf[0], WithinAbs(std::log(3.0 / 3.0), 1e-15));
  CHECK_THAT(ds.idf.idf[1], WithinAbs(std::log(3.0), 1e-15));
  CHECK(ds.labels == labels);

  // a term present in every doc has idf 0 and drops out of the support
  CHECK(support(ds.vectors[0]) == std::set<std::size_t>{1});
  CHECK(support(ds.vectors[1]).empty());
  CHECK(support(ds.vectors[2]) == std::set<std::size_t>{2});
}

TEST_CASE("featurize_corpus: single doc has df = 1 for each of its terms") {
  const auto docs = docs_from({{"a", "c", "c"}});
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a", "b", "c"}, VocabPolicy::freq_overall,
      KeywordSet{});
  const auto df = document_frequencies(docs, *vocab);
  CHECK(df == std::vector<std::uint64_t>{1, 0, 1});
}

TEST_CASE("featurize_corpus validates labels") {
  const auto docs = docs_from({{"a"}});
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a"}, VocabPolicy::freq_overall, KeywordSet{});
  CHECK_THROWS_AS(
      featurize_corpus(docs, std::vector<int>{}, vocab, Scheme::count),
      SchemaError);
  CHECK_THROWS_AS(
      featurize_corpus(docs, std::vector<int>{3}, vocab, Scheme::count),
      SchemaError);
}

TEST_CASE("support equality across schemes under positive idf") {
  Rng rng(17);
  const auto corpus = synthetic::make_two_topic_corpus(40, 23, {});
  auto all = corpus.topic;
  all.insert(all.end(), corpus.control.begin(), corpus.control.end());
  const auto vocab = std::make_shared<Vocabulary>(
      build_vocabulary(corpus.topic, corpus.control,
                       VocabPolicy::freq_overall, 120, {}));
  // force strictly positive idf by adding a doc that contains nothing
  // from the vocabulary (no term can then be in every doc)
  all.push_back({"pad", {"zzzpad"}});
  std::vector<int> labels(all.size(), +1);
  labels.back() = -1;
  const auto ds = featurize_corpus(all, labels, vocab, Scheme::tfidf);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    const auto b = vectorize(all[i], *vocab, Scheme::binary);
    const auto c = vectorize(all[i], *vocab, Scheme::count);
    const auto t = vectorize(all[i], *vocab, Scheme::tfidf, &ds.idf);
    CHECK(support(b) == support(c));
    CHECK(support(c) == support(t));
    // binary = count clamped to 1
    for (std::size_t k = 0; k < b.entries.size(); ++k) {
      CHECK(b.entries[k].value == 1.0);
      CHECK(c.entries[k].value >= 1.0);
    }
    // indices strictly increasing
    for (std::size_t k = 1; k < c.entries.size(); ++k)
      CHECK(c.entries[k].index > c.entries[k - 1].index);
  }
}

TEST_CASE("literal inverse-df weighting is available") {
  const auto docs = docs_from({{"a"}, {"a", "b"}});
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a", "b"}, VocabPolicy::freq_overall,
      KeywordSet{});
  const auto ds = featurize_corpus(docs, std::vector<int>{+1, -1}, vocab,
                                   Scheme::tfidf, IdfKind::inverse_df);
  CHECK_THAT(ds.idf.idf[0], WithinAbs(0.5, 1e-15));  // df = 2
  CHECK_THAT(ds.idf.idf[1], WithinAbs(1.0, 1e-15));  // df = 1
}

TEST_CASE("vocabulary save/load round-trip") {
  const auto path =
      (std::filesystem::temp_directory_path() / "tm_vocab_test.txt").string();
  const Vocabulary v({"alpha", "beta", "gamma"}, VocabPolicy::freq_overall,
                     KeywordSet{});
  save_vocabulary(v, path);
  const auto back = load_vocabulary(path);
  CHECK(back.terms() == v.terms());
  CHECK(back.hash() == v.hash());
  std::filesystem::remove(path);
}

TEST_CASE("dataset serialization format") {
  const auto docs = docs_from({{"a", "a", "b"}, {}});
  const auto vocab = std::make_shared<Vocabulary>(
      std::vector<std::string>{"a", "b"}, VocabPolicy::freq_overall,
      KeywordSet{});
  const auto ds =
      featurize_corpus(docs, std::vector<int>{+1, -1}, vocab, Scheme::count);
  std::stringstream ss;
  write_dataset(ds, ss);
  CHECK(ss.str() == "+1 0:2 1:1\n-1\n");
}
