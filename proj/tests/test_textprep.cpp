#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tweetmine/stemmer.hpp"
#include "tweetmine/stopwords.hpp"
#include "tweetmine/textprep.hpp"

using namespace tweetmine;

namespace {

std::string joined(const TokenDoc& doc) {
  std::string out;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += doc.tokens[i];
  }
  return out;
}

}  // namespace

TEST_CASE("stemmer handles the published worked examples") {
  CHECK(stem("tremendously") == "tremend");
  CHECK(stem("burdening") == "burden");
  CHECK(stem("autism") == "autism");
  CHECK(stem("analysis") == "analysi");
  CHECK(stem("individuals") == "individu");
  CHECK(stem("deletions") == "delet");
  CHECK(stem("genetic") == "genet");
  CHECK(stem("sequencing") == "sequenc");
  CHECK(stem("using") == "use");
  CHECK(stem("ethical") == "ethic");
  CHECK(stem("approval") == "approv");
  CHECK(stem("exposing") == "expos");
  CHECK(stem("children") == "child");
  CHECK(stem("none") == "none");
}

TEST_CASE("stemmer general behaviour") {
  CHECK(stem("caresses") == "caress");
  CHECK(stem("ponies") == "poni");
  CHECK(stem("ties") == "tie");
  CHECK(stem("cats") == "cat");
  CHECK(stem("feed") == "feed");
  CHECK(stem("agreed") == "agre");
  CHECK(stem("plastered") == "plaster");
  CHECK(stem("motoring") == "motor");
  CHECK(stem("sing") == "sing");
  CHECK(stem("conflated") == "conflat");
  CHECK(stem("troubled") == "troubl");
  CHECK(stem("sized") == "size");
  CHECK(stem("hopping") == "hop");
  CHECK(stem("falling") == "fall");
  CHECK(stem("happy") == "happi");
  CHECK(stem("relational") == "relat");
  CHECK(stem("vietnamization") == "vietnam");
  CHECK(stem("operator") == "oper");
  CHECK(stem("triplicate") == "triplic");
  CHECK(stem("hopefulness") == "hope");
  CHECK(stem("electrical") == "electr");
  CHECK(stem("adjustable") == "adjust");
  CHECK(stem("irritant") == "irrit");
  CHECK(stem("effective") == "effect");
  CHECK(stem("probate") == "probat");
  CHECK(stem("controll") == "control");
  CHECK(stem("dying") == "die");
  CHECK(stem("news") == "news");
  // words of length <= 2 are left alone
  CHECK(stem("dr") == "dr");
  CHECK(stem("aw") == "aw");
}

TEST_CASE("stemmer is a projection on common vocabulary") {
  // Porter is not a projection on every word (step 1b can synthesize a
  // trailing 's' that step 1a would strip on a second pass: "exposing" ->
  // "expos" -> "expo"); the property is asserted on stems without that
  // shape, which covers all the published example outputs.
  const std::vector<std::string> words{
      "tremendously", "burdening",  "autism",   "analysis",  "individuals",
      "deletions",    "genetic",    "using",    "children",  "research",
      "happening",    "ethical",    "approval", "vaccine",   "interview",
      "censorship",   "powerful",   "looking",  "parents",   "views",
      "understanding", "communities", "disorders", "supporting", "therapy",
      "diagnosis",    "awareness",  "helping",  "kids",      "families"};
  for (const auto& w : words) {
    const std::string once = stem(w);
    if (once.ends_with('s')) continue;
    CHECK(stem(once) == once);
  }
  // the known non-fixpoint, frozen so a change in behaviour is caught
  CHECK(stem("expos") == "expo");
}

TEST_CASE("normalize mirrors the published examples") {
  CHECK(normalize("Cover-up of the Vaccine & Autism Link on .@rediceradio "
                  "http://youtu.be/x") ==
        "cover up of the vaccine autism link on atus url");
  CHECK(normalize(":-) #MobileTech") == "mobiletech");
  CHECK(normalize("") == "");
}

TEST_CASE("normalize details") {
  CHECK(normalize("Vaccine &amp; Autism") == "vaccine autism");
  CHECK(normalize("see https://example.org/a?b=1 now") == "see url now");
  CHECK(normalize("hi @SomeUser!") == "hi atus");
  CHECK(normalize(".@user leading dot form") == "atus leading dot form");
  CHECK(normalize("#Tag ##Double #123") == "tag double 123");
  CHECK(normalize("digits 101 stay") == "digits 101 stay");
  CHECK(normalize("don't stop") == "dont stop");
  CHECK(normalize("em—dash and…ellipsis") == "em dash andellipsis");
  // non-Latin scripts pass through
  CHECK(normalize("toki été") == "toki été");
}

TEST_CASE("preprocess reproduces published example 2 token for token") {
  const auto doc = preprocess(
      "ex2",
      "Authors who see autism as \"tremendously burdening\" elicit dire "
      "views of autism from parents http://j.mp/1FyqXwF  \"Ethical "
      "approval: none\"");
  CHECK(joined(doc) ==
        "author see autism tremend burden elicit dire view autism parent "
        "url ethic approv none");
}

TEST_CASE("preprocess reproduces published example 4 token for token") {
  const auto doc = preprocess(
      "ex4",
      "#Apple #Censorship & Dr. Brian Hooker Interview exposing CDC "
      "Cover-up of the Vaccine & Autism Link on .@rediceradio  "
      "http://youtu.be/19uvPtg6SPI");
  CHECK(joined(doc) ==
        "appl censorship dr brian hooker interview expos cdc cover vaccin "
        "autism link atus url");
}

TEST_CASE("preprocess example 3: digits kept, stems as published") {
  const auto doc = preprocess(
      "ex3",
      "101 autism: Genetic analysis of individuals with autism finds gene "
      "deletions - Using powerful genetic sequencing. http://is.gd/UhprQK");
  CHECK(joined(doc) ==
        "101 autism genet analysi individu autism find gene delet use power "
        "genet sequenc url");
}

TEST_CASE("preprocess: stop-word-only input yields an empty doc") {
  const auto doc = preprocess("x", "we will have more for in");
  CHECK(doc.tokens.empty());
}

TEST_CASE("preprocess enforces the output invariants") {
  PipelineConfig cfg;
  const auto doc = preprocess(
      "inv", "The INS said noes... es 5 #wild-card @who http://x.io/q");
  for (const auto& tok : doc.tokens) {
    CHECK_FALSE(cfg.stopwords->count(tok));
    if (all_ascii_lower_alpha(tok)) CHECK(codepoint_length(tok) >= 2);
  }
  // "ins" stems to the stop word "in" and must not survive; "es" stems to
  // the single letter "e" and must not survive either
  for (const auto& tok : doc.tokens) {
    CHECK(tok != "in");
    CHECK(tok != "e");
  }
}

TEST_CASE("canonical url/mention tokens are never stemmed") {
  const auto doc = preprocess("t", "ping @user visit http://a.io");
  REQUIRE(doc.tokens.size() == 4);
  CHECK(doc.tokens[1] == "atus");  // raw Porter would make this "atu"
  CHECK(doc.tokens[3] == "url");
}

TEST_CASE("preprocess is idempotent on the published outputs without "
          "s-final stems") {
  PipelineConfig cfg;
  const std::string ex2 =
      "author see autism tremend burden elicit dire view autism parent url "
      "ethic approv none";
  const auto doc = preprocess("a", ex2, cfg);
  CHECK(joined(doc) == ex2);
}

TEST_CASE("preprocess idempotence property on generated docs") {
  // texts over vocabulary whose stems are fixpoints
  const std::vector<std::string> texts{
      "vaccin autism link research child parent school therapi",
      "help kid learn support group share stori everi week",
      "101 world awar day walk event fund donat url atus",
  };
  for (const auto& text : texts) {
    const auto once = preprocess("t", text);
    const auto twice = preprocess("t", joined(once));
    CHECK(once.tokens == twice.tokens);
  }
}

TEST_CASE("preprocess determinism") {
  const std::string text =
      "Some #Mixed input with http://urls.example and @mentions too!";
  const auto a = preprocess("t", text);
  const auto b = preprocess("t", text);
  CHECK(a == b);
}

TEST_CASE("stem_enabled=false keeps surface forms") {
  PipelineConfig cfg;
  cfg.stem_enabled = false;
  const auto doc = preprocess("t", "it is the adhd, oops!", cfg);
  REQUIRE(doc.tokens.size() == 2);
  CHECK(doc.tokens[0] == "adhd");
  CHECK(doc.tokens[1] == "oops");
}

TEST_CASE("pipeline config validation") {
  PipelineConfig cfg;
  cfg.min_token_len = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.url_token = "";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("token docs round-trip through the tab format") {
  std::vector<TokenDoc> docs{
      {"1", {"alpha", "beta"}},
      {"2", {}},  // empty docs keep their line
      {"3", {"gamma"}},
  };
  std::stringstream ss;
  write_token_docs(docs, ss);
  const auto back = read_token_docs(ss);
  CHECK(back == docs);
}

TEST_CASE("custom stop-word files") {
  const auto path = std::filesystem::temp_directory_path() / "sw_test.txt";
  {
    std::ofstream f(path);
    f << "# comment\nFoo\nbar\n\n";
  }
  const auto set = load_stopwords(path.string());
  CHECK(set.count("foo"));
  CHECK(set.count("bar"));
  CHECK_FALSE(set.count("# comment"));
  CHECK_THROWS_AS(load_stopwords("/nonexistent/stopwords.txt"), ConfigError);
}
