#include "stif/corpus.hpp"

#include <doctest.h>

#include <filesystem>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/textnorm.hpp"

using namespace stif;
using namespace stif::corpus;

namespace {

std::vector<RawDocument> docs_from(const std::vector<std::string>& texts) {
  std::vector<RawDocument> docs;
  for (size_t i = 0; i < texts.size(); ++i) docs.push_back({std::to_string(i), texts[i], ""});
  return docs;
}

const std::unordered_set<std::string> kEnglish = {"the",  "please", "help", "my",   "account",
                                                  "is",   "not",    "work", "can",  "you",
                                                  "why",  "when",   "i",    "need", "this"};

}  // namespace

TEST_CASE("filter_corpus applies the length window") {
  FilterConfig config;  // 5..25, 0.6
  auto mono = filter_corpus(docs_from({"tiga kata saja"}), config, kEnglish);
  CHECK(mono.sentences.empty());  // 3 tokens < 5
  mono = filter_corpus(docs_from({"lima kata pas di sini"}), config, kEnglish);
  CHECK(mono.sentences.size() == 1);
}

TEST_CASE("filter_corpus drops predominantly English docs") {
  FilterConfig config;
  // 10 tokens, 6 English -> 0.6 >= 0.6 threshold, dropped
  std::string doc = "please help my account is not kerja dong ya min";
  FilterSummary summary;
  auto mono = filter_corpus(docs_from({doc}), config, kEnglish, &summary);
  CHECK(mono.sentences.empty());
  CHECK(summary.dropped_english == 1);
  // 5/10 English kept
  doc = "please help my account is rusak kerja dong ya min";
  mono = filter_corpus(docs_from({doc}), config, kEnglish);
  CHECK(mono.sentences.size() == 1);
  // empty vocab disables the ratio filter
  mono = filter_corpus(docs_from({"please help my account is not work can you now"}), config, {});
  CHECK(mono.sentences.size() == 1);
}

TEST_CASE("filter_corpus dedups and strips hashtags") {
  FilterConfig config;
  std::string doc = "sinyal hilang terus di rumah saya #telkomsel";
  auto mono = filter_corpus(docs_from({doc, doc}), config, kEnglish);
  REQUIRE(mono.sentences.size() == 1);
  CHECK(mono.sentences[0] == "sinyal hilang terus di rumah saya");
}

TEST_CASE("filter_corpus is idempotent") {
  FilterConfig config;
  auto docs = docs_from({"sinyal hilang terus di rumah saya #keluhan",
                         "kenapa paket data saya tidak bisa dipakai ya min",
                         "kenapa paket data saya tidak bisa dipakai ya min", "pendek banget",
                         "please help my account is not work can you min"});
  auto once = filter_corpus(docs, config, kEnglish);
  auto twice = filter_corpus(docs_from(once.sentences), config, kEnglish);
  CHECK(once.sentences == twice.sentences);
}

TEST_CASE("split_corpus produces exact sizes deterministically") {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int i = 0; i < 2500; ++i)
    pairs.emplace_back("informal " + std::to_string(i), "formal " + std::to_string(i));
  ParallelCorpus a = split_corpus(pairs, {1922, 214, 364}, 42);
  CHECK(a.split_size(Split::kTrain) == 1922);
  CHECK(a.split_size(Split::kDev) == 214);
  CHECK(a.split_size(Split::kTest) == 364);

  ParallelCorpus b = split_corpus(pairs, {1922, 214, 364}, 42);
  for (size_t i = 0; i < a.pairs.size(); ++i) CHECK(a.pairs[i].split == b.pairs[i].split);

  // partition: order preserved, every pair present exactly once
  for (size_t i = 0; i < a.pairs.size(); ++i) CHECK(a.pairs[i].informal == pairs[i].first);

  ParallelCorpus all_train = split_corpus({pairs.begin(), pairs.begin() + 3}, {3, 0, 0}, 1);
  CHECK(all_train.split_size(Split::kTrain) == 3);

  CHECK_THROWS_AS(split_corpus(pairs, {1922, 214, 363}, 42), Error);
}

TEST_CASE("compute_stats counts tokens, unique tokens, punctuation") {
  std::vector<Tokens> sentences = {textnorm::tokenize("a b ."), textnorm::tokenize("a c")};
  CorpusStats stats = compute_stats(sentences);
  CHECK(stats.n_tokens == 5);
  CHECK(stats.n_unique_tokens == 4);
  CHECK(stats.punct_counts.at(".") == 1);
  CHECK(stats.n_missing_final_period == 1);

  CHECK(compute_stats({}).n_tokens == 0);
}

TEST_CASE("compute_stats is additive over concatenation") {
  std::vector<Tokens> a = {textnorm::tokenize("x y ."), textnorm::tokenize("z")};
  std::vector<Tokens> b = {textnorm::tokenize("x w ?")};
  std::vector<Tokens> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(compute_stats(both).n_tokens == compute_stats(a).n_tokens + compute_stats(b).n_tokens);
  CHECK(compute_stats(both).n_unique_tokens <=
        compute_stats(a).n_unique_tokens + compute_stats(b).n_unique_tokens);
}

TEST_CASE("stif export format and round trip") {
  ParallelCorpus corpus;
  corpus.pairs.push_back({"cabs kuy", "ayo pergi", Split::kTrain});
  auto lines = export_stif_pairs(corpus, Split::kTrain);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == "cabs kuy <STIF> ayo pergi");
  auto [inf, form] = parse_stif_line(lines[0]);
  CHECK(inf == "cabs kuy");
  CHECK(form == "ayo pergi");

  CHECK(export_stif_pairs(corpus, Split::kDev).empty());

  corpus.pairs.push_back({"pakai <STIF> tag", "x", Split::kTrain});
  CHECK_THROWS_AS(export_stif_pairs(corpus, Split::kTrain), Error);
}

TEST_CASE("pair files, TSV, and split manifest round trip") {
  auto dir = std::filesystem::temp_directory_path() / "stif_corpus_test";
  std::filesystem::create_directories(dir);
  std::vector<std::pair<std::string, std::string>> pairs = {{"gak bisa", "tidak bisa"},
                                                            {"knp ya", "kenapa ya"}};
  write_lines(dir / "c.inf", {"gak bisa", "knp ya"});
  write_lines(dir / "c.for", {"tidak bisa", "kenapa ya"});
  CHECK(load_pairs_two_files(dir / "c.inf", dir / "c.for") == pairs);
  CHECK(load_pairs_auto(dir / "c") == pairs);

  save_pairs_tsv(dir / "c.tsv", pairs);
  CHECK(load_pairs_tsv(dir / "c.tsv") == pairs);

  ParallelCorpus corpus = split_corpus(pairs, {1, 0, 1}, 9);
  save_split_manifest(dir / "c.splits", corpus);
  ParallelCorpus again = apply_split_manifest(pairs, dir / "c.splits");
  for (size_t i = 0; i < corpus.pairs.size(); ++i)
    CHECK(corpus.pairs[i].split == again.pairs[i].split);

  write_lines(dir / "bad.inf", {"one line"});
  CHECK_THROWS_AS(load_pairs_two_files(dir / "bad.inf", dir / "c.for"), Error);
  std::filesystem::remove_all(dir);
}
