#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>
#include <unordered_set>

#include "support/synthetic.hpp"
#include "tweetmine/corpus.hpp"
#include "tweetmine/keywords.hpp"
#include "tweetmine/record.hpp"

using namespace tweetmine;

TEST_CASE("parse_record extracts entities from text when absent") {
  const auto rec = parse_record(R"({"id":"1","text":"hi #a @b http://x"})");
  CHECK(rec.id == "1");
  CHECK(rec.hashtags == std::vector<std::string>{"a"});
  CHECK(rec.mentions == std::vector<std::string>{"b"});
  CHECK(rec.urls == std::vector<std::string>{"http://x"});
}

TEST_CASE("parse_record explicit entities suppress extraction") {
  const auto rec = parse_record(
      R"({"id":"1","text":"hi #a @b","entities":{"hashtags":["#X"],"mentions":[],"urls":[]}})");
  CHECK(rec.hashtags == std::vector<std::string>{"x"});  // lowercased, no '#'
  CHECK(rec.mentions.empty());
}

TEST_CASE("parse_record schema errors name the field") {
  try {
    parse_record(R"({"id":"1"})");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.field() == "text");
  }
  try {
    parse_record(R"({"text":"x"})");
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.field() == "id");
  }
  CHECK_THROWS_AS(parse_record(R"({"id":"1","text":"   "})"), SchemaError);
}

TEST_CASE("parse_record malformed JSON carries a byte offset") {
  try {
    parse_record(R"({"id": 1, "text)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset() > 0);
  }
}

TEST_CASE("parse_record validates geo ranges") {
  CHECK_THROWS_AS(
      parse_record(R"({"id":"1","text":"x","geo":{"lat":99.0,"lon":0.0}})"),
      SchemaError);
  const auto ok =
      parse_record(R"({"id":"1","text":"x","geo":{"lat":-33.8,"lon":151.2}})");
  REQUIRE(ok.geo.has_value());
  CHECK(ok.geo->lat == -33.8);
}

TEST_CASE("parse_record accepts numeric ids and user objects") {
  const auto rec = parse_record(
      R"({"id":42,"text":"x","user":{"id":7},"retweeted":true,"lang":"EN"})");
  CHECK(rec.id == "42");
  CHECK(rec.author_id == "7");
  CHECK(rec.is_retweet);
  CHECK(rec.lang == "en");
}

TEST_CASE("1000 records round-trip parse -> serialize -> parse") {
  const auto records = synthetic::make_random_records(1000, 91);
  for (const auto& rec : records) {
    const auto back = parse_record(serialize_record(rec));
    REQUIRE(back == rec);
    // a second cycle is also stable
    REQUIRE(parse_record(serialize_record(back)) == back);
  }
}

TEST_CASE("keyword set validation") {
  CHECK_THROWS_AS(KeywordSet({"autism", "aut"}), ConfigError);  // prefix
  CHECK_THROWS_AS(KeywordSet({"a", "a"}), ConfigError);         // duplicate
  CHECK_THROWS_AS(KeywordSet({""}), ConfigError);
  CHECK_THROWS_AS(KeywordSet({"has space"}), ConfigError);
  const auto ks = KeywordSet::parse_csv("Autism, adhd ,asperger,aspie");
  CHECK(ks.size() == 4);
  CHECK(ks.keywords()[0] == "autism");  // lowercased
}

TEST_CASE("with_stemmed_forms adds stems and keeps the set prefix-free") {
  const auto ks =
      KeywordSet::parse_csv("autism,adhd,asperger,aspie").with_stemmed_forms();
  CHECK(ks.matches_token("asperg"));  // stem of asperger
  CHECK(ks.matches_token("aspi"));    // stem of aspie
  CHECK(ks.matches_token("autismawareness"));
  CHECK_FALSE(ks.matches_token("aspen"));
}

TEST_CASE("matches_keywords: the published matching rules") {
  const auto ks = KeywordSet::parse_csv("autism,adhd,asperger,aspie");
  CHECK(matches_keywords("Autism awareness month", ks));
  CHECK(matches_keywords("#autismawareness rocks", ks));  // suffixation
  CHECK_FALSE(matches_keywords("my adh d is", ks));
  CHECK(matches_keywords("she's an ASPIE!", ks));
  CHECK_FALSE(matches_keywords("", ks));
  // URL tokens are excluded from matching
  CHECK_FALSE(matches_keywords("look http://autism.example/page", ks));
  CHECK(matches_keywords("autism http://x.example", ks));
}

TEST_CASE("matches_keywords is case-invariant and suffix-stable") {
  const auto ks = KeywordSet::parse_csv("autism,adhd");
  const std::vector<std::string> suffixes{"", "s", "awareness", "123", "xyz"};
  for (const auto& s : suffixes) {
    CHECK(matches_keywords("autism" + s, ks));
    CHECK(matches_keywords("AUTISM" + s, ks));
    CHECK(matches_keywords("AuTiSm" + s, ks));
  }
}

TEST_CASE("matched_keywords reports the matching subset") {
  const auto ks = KeywordSet::parse_csv("autism,adhd,asperger,aspie");
  const auto m = matched_keywords("adhd and AUTISM in one tweet", ks);
  CHECK(m == std::vector<std::string>{"autism", "adhd"});
}

TEST_CASE("split_corpus basic counts and order") {
  const auto ks = KeywordSet::parse_csv("autism,adhd");
  std::vector<TweetRecord> records;
  const std::vector<std::pair<std::string, std::string>> rows{
      {"1", "autism day"}, {"2", "pizza"},      {"3", "my adhd"},
      {"4", "more pizza"}, {"5", "plain talk"},
  };
  for (const auto& [id, text] : rows) {
    TweetRecord r;
    r.id = id;
    r.text = text;
    records.push_back(r);
  }
  const auto [topic, control] = split_corpus(records, ks);
  REQUIRE(topic.records.size() == 2);
  REQUIRE(control.records.size() == 3);
  CHECK(topic.records[0].id == "1");
  CHECK(topic.records[1].id == "3");
  CHECK(control.records[0].id == "2");
  CHECK(topic.label == Label::topic);
  CHECK(control.label == Label::control);
}

TEST_CASE("split_corpus: empty stream yields two empty corpora") {
  const auto [topic, control] = split_corpus({}, KeywordSet({"autism"}));
  CHECK(topic.records.empty());
  CHECK(control.records.empty());
}

TEST_CASE("split_corpus rejects duplicate ids naming the offender") {
  std::vector<TweetRecord> records(2);
  records[0].id = "dup";
  records[0].text = "a";
  records[1].id = "dup";
  records[1].text = "b";
  try {
    split_corpus(records, KeywordSet({"autism"}));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("dup") != std::string::npos);
  }
}

TEST_CASE("split_corpus agrees with a per-record scan on 10k records") {
  Rng rng(1234);
  const auto ks = KeywordSet::parse_csv("autism,adhd,asperger,aspie");
  const std::vector<std::string> fillers{"hello",  "world",   "pizza",
                                         "autism", "adhdfoo", "nothing",
                                         "ASPIE",  "x"};
  std::vector<TweetRecord> records;
  for (std::size_t i = 0; i < 10000; ++i) {
    TweetRecord r;
    r.id = "r" + std::to_string(i);
    std::string text;
    const std::size_t len = 1 + rng.below(6);
    for (std::size_t k = 0; k < len; ++k) {
      if (k) text += ' ';
      text += fillers[rng.below(fillers.size())];
    }
    r.text = text;
    records.push_back(std::move(r));
  }
  const auto [topic, control] = split_corpus(records, ks);
  CHECK(topic.records.size() + control.records.size() == records.size());
  std::unordered_set<std::string> topic_ids;
  for (const auto& r : topic.records) topic_ids.insert(r.id);
  for (const auto& r : records) {
    const bool expect_topic = matches_keywords(r.text, ks);
    CHECK(topic_ids.count(r.id) == static_cast<std::size_t>(expect_topic));
  }
}

TEST_CASE("corpus_stats counts the metadata exactly") {
  LabeledCorpus c;
  c.label = Label::topic;
  for (int i = 0; i < 4; ++i) {
    TweetRecord r;
    r.id = std::to_string(i);
    r.text = "x";
    r.author_id = i < 2 ? "same" : "u" + std::to_string(i);
    c.records.push_back(r);
  }
  c.records[0].is_retweet = true;
  c.records[1].hashtags = {"a"};
  c.records[2].hashtags = {"b", "c"};
  const auto s = corpus_stats(c);
  CHECK(s.n_total == 4);
  CHECK(s.n_retweets == 1);
  CHECK(s.n_original == 3);
  CHECK(s.n_with_hashtags == 2);
  CHECK(s.n_unique_users == 3);
  CHECK(s.n_original + s.n_retweets == s.n_total);
}

TEST_CASE("corpus_stats: empty corpus is all zeros") {
  CHECK(corpus_stats(LabeledCorpus{}) == CorpusStats{});
}

TEST_CASE("corpus_stats equals a naive second-pass tally on 1k records") {
  LabeledCorpus c;
  c.records = synthetic::make_random_records(1000, 7);
  const auto s = corpus_stats(c);
  CorpusStats naive;
  std::unordered_set<std::string> users;
  for (const auto& r : c.records) {
    ++naive.n_total;
    naive.n_retweets += r.is_retweet ? 1 : 0;
    naive.n_original += r.is_retweet ? 0 : 1;
    naive.n_with_hashtags += r.hashtags.empty() ? 0 : 1;
    naive.n_geo += r.geo ? 1 : 0;
    naive.n_with_urls += r.urls.empty() ? 0 : 1;
    naive.n_replies += r.in_reply_to ? 1 : 0;
    naive.n_with_mentions += r.mentions.empty() ? 0 : 1;
    if (!r.author_id.empty()) users.insert(r.author_id);
  }
  naive.n_unique_users = users.size();
  CHECK(s == naive);
  CHECK(s.n_unique_users <= s.n_original + s.n_retweets);
}

TEST_CASE("read_ndjson applies the language filter") {
  std::stringstream in;
  in << R"({"id":"1","text":"x","lang":"en"})" << '\n'
     << R"({"id":"2","text":"y","lang":"fr"})" << '\n'
     << R"({"id":"3","text":"z","lang":"en-GB"})" << '\n'
     << R"({"id":"4","text":"w"})" << '\n';
  const auto records = read_ndjson(in, ReadOptions{"en"});
  REQUIRE(records.size() == 3);
  CHECK(records[0].id == "1");
  CHECK(records[1].id == "3");  // en-GB matches the en prefix
  CHECK(records[2].id == "4");  // no lang tag: kept
}

TEST_CASE("read_ndjson reports the offending line on parse failure") {
  std::stringstream in;
  in << R"({"id":"1","text":"x"})" << '\n' << "{broken" << '\n';
  try {
    read_ndjson(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("corpus cache round-trips through the directory layout") {
  const auto dir =
      (std::filesystem::temp_directory_path() / "tm_cache_test").string();
  std::filesystem::remove_all(dir);
  const auto ks = KeywordSet::parse_csv("autism,adhd");
  auto records = synthetic::make_random_records(50, 3);
  records[0].text = "autism talk";
  auto [topic, control] = split_corpus(records, ks);
  write_corpus_cache(dir, topic, control, ks);
  const auto topic_back = load_corpus_cache(dir, Label::topic);
  const auto control_back = load_corpus_cache(dir, Label::control);
  CHECK(topic_back.records == topic.records);
  CHECK(control_back.records == control.records);
  std::filesystem::remove_all(dir);
}
