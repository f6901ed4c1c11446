#include "stif/bleu.hpp"

#include <doctest.h>

#include "stif/error.hpp"
#include "stif/rng.hpp"

using namespace stif;
using namespace stif::bleu;

TEST_CASE("identity hypothesis scores 100") {
  BleuStats stats = sentence_stats("a b c d", "a b c d");
  for (size_t n = 0; n < 4; ++n) CHECK(stats.clipped_matches[n] == stats.hyp_ngrams[n]);
  CHECK(stats.hyp_len == stats.ref_len);
  CHECK(corpus_bleu(stats).bleu == doctest::Approx(100.0));
}

TEST_CASE("clipping caps repeated n-grams") {
  BleuStats stats = sentence_stats("a a a", "a");
  CHECK(stats.clipped_matches[0] == 1);
  CHECK(stats.hyp_ngrams[0] == 3);
}

// Frozen from tests/oracle/bleu_reference.py (independent implementation of
// the 13a tokenizer + corpus BLEU), run once; see that file.
TEST_CASE("five-sentence fixture matches the reference implementation") {
  const std::vector<std::pair<std::string, std::string>> fixture = {
      {"kenapa saat mau login seperti ini terus?",
       "Mengapa ketika mau login seperti begini terus?"},
      {"saya sudah coba restart hp 2 kali, tetap tidak bisa.",
       "Saya sudah mencoba memulai ulang ponsel 2 kali, tetap tidak bisa."},
      {"min tolong dicek ya pulsa saya hilang 50%", "Admin, tolong dicek, pulsa saya hilang 50%."},
      {"paket data sudah aktif kembali terima kasih",
       "Paket data sudah aktif kembali, terima kasih."},
      {"kok齐 aneh", "kok aneh ya"},
  };
  const uint64_t expect_match[5][4] = {
      {5, 3, 1, 0}, {9, 7, 5, 4}, {7, 5, 3, 2}, {7, 5, 3, 2}, {1, 0, 0, 0}};
  const uint64_t expect_total[5][4] = {
      {8, 7, 6, 5}, {12, 11, 10, 9}, {9, 8, 7, 6}, {7, 6, 5, 4}, {2, 1, 0, 0}};
  const uint64_t expect_hyp_len[5] = {8, 12, 9, 7, 2};
  const uint64_t expect_ref_len[5] = {8, 13, 11, 9, 3};

  BleuStats total;
  for (size_t i = 0; i < fixture.size(); ++i) {
    BleuStats s = sentence_stats(fixture[i].first, fixture[i].second);
    CHECK(s.hyp_len == expect_hyp_len[i]);
    CHECK(s.ref_len == expect_ref_len[i]);
    for (size_t n = 0; n < 4; ++n) {
      CHECK(s.clipped_matches[n] == expect_match[i][n]);
      CHECK(s.hyp_ngrams[n] == expect_total[i][n]);
    }
    total += s;
  }
  BleuScore score = corpus_bleu(total);
  CHECK(score.bleu == doctest::Approx(43.2947554952).epsilon(1e-9));
  CHECK(score.brevity_penalty == doctest::Approx(0.8539396656).epsilon(1e-9));
}

TEST_CASE("13a tokenization details") {
  CHECK(tokenize_13a("kenapa saat mau login seperti ini terus?") ==
        Tokens{"kenapa", "saat", "mau", "login", "seperti", "ini", "terus", "?"});
  CHECK(tokenize_13a("min tolong dicek ya pulsa saya hilang 50%") ==
        Tokens{"min", "tolong", "dicek", "ya", "pulsa", "saya", "hilang", "50", "%"});
  // period stays inside numbers, comma detaches after words
  CHECK(tokenize_13a("biaya 1.000, oke") == Tokens{"biaya", "1.000", ",", "oke"});
  CHECK(tokenize_13a("don't") == Tokens{"don't"});
  CHECK(tokenize_13a("a&quot;b") == Tokens{"a", "\"", "b"});
  CHECK(tokenize_13a("2-3 hari") == Tokens{"2", "-", "3", "hari"});
}

TEST_CASE("corpus BLEU edge cases") {
  BleuStats empty;
  CHECK_THROWS_AS(corpus_bleu(empty), Error);

  // any zero precision gives zero (no smoothing)
  BleuStats s = sentence_stats("a b c", "a x y");
  CHECK(corpus_bleu(s).bleu == 0.0);
}

TEST_CASE("stats addition equals stats of concatenated corpora; order independent") {
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"saya mau tanya", "Saya mau bertanya."},
      {"kok gitu sih", "Mengapa begitu?"},
      {"tolong bantu ya", "Tolong bantu, ya."},
  };
  BleuStats forward, backward;
  for (const auto& [h, r] : pairs) forward += sentence_stats(h, r);
  for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
    backward += sentence_stats(it->first, it->second);
  CHECK(forward.hyp_len == backward.hyp_len);
  for (size_t n = 0; n < 4; ++n)
    CHECK(forward.clipped_matches[n] == backward.clipped_matches[n]);
  CHECK(corpus_bleu(forward).bleu == corpus_bleu(backward).bleu);
}

TEST_CASE("brevity penalty is 1 when hyp_len >= ref_len and decreases with shorter hyps") {
  BleuStats s;
  s.hyp_len = 10;
  s.ref_len = 10;
  for (size_t n = 0; n < 4; ++n) {
    s.clipped_matches[n] = 5;
    s.hyp_ngrams[n] = 10;
  }
  CHECK(corpus_bleu(s).brevity_penalty == 1.0);
  double prev = corpus_bleu(s).bleu;
  for (uint64_t len : {9, 8, 7, 6}) {
    s.hyp_len = len;
    BleuScore score = corpus_bleu(s);
    CHECK(score.brevity_penalty < 1.0);
    CHECK(score.bleu < prev);
    prev = score.bleu;
  }
}

TEST_CASE("lowercase scoring is case-insensitive; switchable") {
  BleuStats lc = sentence_stats("SAYA BISA", "saya bisa");
  CHECK(lc.clipped_matches[0] == 2);
  BleuStats cased = sentence_stats("SAYA BISA", "saya bisa", {false});
  CHECK(cased.clipped_matches[0] == 0);
}
