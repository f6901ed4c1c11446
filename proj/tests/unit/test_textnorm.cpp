#include "stif/textnorm.hpp"

#include <doctest.h>

#include "stif/rng.hpp"

using namespace stif;
using namespace stif::textnorm;

TEST_CASE("squeeze_repeats truncates runs of three or more") {
  CHECK(squeeze_repeats("makannn") == "makann");
  CHECK(squeeze_repeats("makan") == "makan");
  CHECK(squeeze_repeats("aaaa bbb cc") == "aa bb cc");
  CHECK(squeeze_repeats("") == "");
  // code points, not bytes
  CHECK(squeeze_repeats("hééé") == "héé");
}

TEST_CASE("squeeze_repeats is idempotent and never leaves a long run") {
  Rng rng(7);
  const std::string alphabet = "ab!.x ";
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    for (size_t i = 0; i < rng.below(30); ++i) s += alphabet[rng.below(alphabet.size())];
    std::string once = squeeze_repeats(s);
    CHECK(squeeze_repeats(once) == once);
    CHECK(once.size() <= s.size());
    for (size_t i = 2; i < once.size(); ++i)
      CHECK(!(once[i] == once[i - 1] && once[i] == once[i - 2]));
  }
}

TEST_CASE("tokenize detaches punctuation") {
  CHECK(tokenize("Saya bisa, admin") == Tokens{"Saya", "bisa", ",", "admin"});
  CHECK(tokenize("") == Tokens{});
  CHECK(tokenize("gak bisa login?") == Tokens{"gak", "bisa", "login", "?"});
}

TEST_CASE("tokenize keeps protected shapes whole") {
  CHECK(tokenize("12/05/2020") == Tokens{"12/05/2020"});
  CHECK(tokenize("tgl 12/05/2020, ya") == Tokens{"tgl", "12/05/2020", ",", "ya"});
  CHECK(tokenize("1.000") == Tokens{"1.000"});
  CHECK(tokenize("Rp1.000") == Tokens{"Rp1" /* shape broken by prefix */, ".", "000"});
  CHECK(tokenize("harga 1.000.") == Tokens{"harga", "1.000", "."});
  CHECK(tokenize("50%") == Tokens{"50%"});
  CHECK(tokenize("50,5% naik") == Tokens{"50,5%", "naik"});
  CHECK(tokenize("@telkomsel!!") == Tokens{"@telkomsel", "!", "!"});
  CHECK(tokenize("<num> itu") == Tokens{"<num>", "itu"});
}

TEST_CASE("tokenize is idempotent on its own detokenized output") {
  Rng rng(11);
  const Tokens seeds = {"halo",      "1.000", "50%",  "@akun",   "12/05/2020", "...",
                        "kok,aneh!", "<num>", "a1b2", "(cek)",   "'quote'",    "x"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (size_t i = 0; i < 1 + rng.below(8); ++i) {
      if (i) text += ' ';
      text += seeds[rng.below(seeds.size())];
    }
    Tokens once = tokenize(text);
    CHECK(tokenize(detokenize(once)) == once);
  }
}

TEST_CASE("mask_entities replaces by priority and keeps token count") {
  CHECK(mask_entities({"@telkomsel"}) == Tokens{"<account>"});
  CHECK(mask_entities({"12/05/2020", "50%", "100"}) == Tokens{"<date>", "<percent>", "<num>"});
  CHECK(mask_entities({"harga"}) == Tokens{"harga"});
  Tokens mixed = {"cek", "12/05/2020", "di", "@akun", ",", "biaya", "1.000", "atau", "50%"};
  Tokens masked = mask_entities(mixed);
  CHECK(masked == Tokens{"cek", "<date>", "di", "<account>", ",", "biaya", "<num>", "atau",
                         "<percent>"});
  CHECK(masked.size() == mixed.size());
  // idempotent: surfaces never match the shape patterns
  CHECK(mask_entities(masked) == masked);
}

TEST_CASE("normalize composes the four stages in order") {
  // oracle: compose the stages independently
  std::string text = "Akuu dari @telkomsel!!!";
  Tokens by_hand = mask_entities(tokenize(squeeze_repeats(lowercase(text))));
  CHECK(normalize(text) == by_hand);
  CHECK(normalize(text) == Tokens{"akuu", "dari", "<account>", "!", "!"});

  NormalizationConfig off;
  off.lowercase = false;
  off.squeeze_repeats = false;
  off.mask = MaskKinds::none();
  CHECK(normalize("Akuu dari @telkomsel!!!", off) == tokenize("Akuu dari @telkomsel!!!"));
}

TEST_CASE("normalize is idempotent on detokenized output and stays lowercase") {
  Rng rng(3);
  const Tokens seeds = {"Akuu", "DARI", "@telkomsel!!!", "makannn", "100", "12/05/2020",
                        "gimanaaa", "?", "kok.gitu", "50%"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (size_t i = 0; i < 1 + rng.below(6); ++i) {
      if (i) text += ' ';
      text += seeds[rng.below(seeds.size())];
    }
    Tokens once = normalize(text);
    CHECK(normalize(detokenize(once)) == once);
    for (const std::string& t : once)
      for (char c : t) CHECK(!(c >= 'A' && c <= 'Z'));
  }
}
