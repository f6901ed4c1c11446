#include "stif/align.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "stif/error.hpp"
#include "stif/rng.hpp"

using namespace stif;
using namespace stif::align;

namespace {

std::vector<std::pair<Tokens, Tokens>> toy_corpus() {
  return {{{"gak", "bisa"}, {"tidak", "bisa"}}, {{"gak", "mau"}, {"tidak", "mau"}}};
}

double row_sum(const TranslationTable& t, uint32_t s) {
  double sum = 0.0;
  for (const auto& [tgt, p] : t.rows[s]) sum += p;
  return sum;
}

}  // namespace

TEST_CASE("toy EM concentrates probability, matching the dense oracle") {
  TranslationTable table = train_ibm1(toy_corpus(), {10, 0.0, 1e-7});
  CHECK(table.prob("gak", "tidak") > 0.9);

  // Independent dense-matrix EM over the same corpus with hand-built ids:
  // source 0=NULL 1=gak 2=bisa 3=mau; target 0=tidak 1=bisa 2=mau.
  test_oracles::DenseIbm1 oracle(4, 3);
  oracle.train({{{1, 2}, {0, 1}}, {{1, 3}, {0, 2}}}, 10);
  CHECK(table.prob("gak", "tidak") == doctest::Approx(oracle.t[1][0]).epsilon(1e-12));
  CHECK(table.prob("gak", "bisa") == doctest::Approx(oracle.t[1][1]).epsilon(1e-12));
  CHECK(table.prob("bisa", "bisa") == doctest::Approx(oracle.t[2][1]).epsilon(1e-12));
  CHECK(table.prob_null("tidak") == doctest::Approx(oracle.t[0][0]).epsilon(1e-12));
}

TEST_CASE("single pair: NULL and the word share the mass") {
  TranslationTable t = train_ibm1({{{"a"}, {"b"}}}, {5, 0.0, 1e-7});
  double p_word = t.prob("a", "b");
  double p_null = t.prob_null("b");
  CHECK(p_word + p_null == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p_word >= 0.5);
}

TEST_CASE("row sums stay at 1 and log-likelihood never decreases") {
  std::vector<std::pair<Tokens, Tokens>> corpus = {
      {{"saya", "gak", "bisa", "login"}, {"saya", "tidak", "bisa", "login"}},
      {{"gak", "bisa", "buka"}, {"tidak", "bisa", "membuka"}},
      {{"kok", "gitu", "ya"}, {"mengapa", "begitu", "?"}},
      {{"saya", "mau", "tanya"}, {"saya", "mau", "bertanya"}},
  };
  TranslationTable t = train_ibm1(corpus, {6, 1e-6, 1e-7});
  for (uint32_t s = 0; s < t.rows.size(); ++s) {
    if (t.rows[s].empty()) continue;
    CHECK(row_sum(t, s) == doctest::Approx(1.0).epsilon(1e-6));
  }
  REQUIRE(t.log_likelihoods.size() == 6);
  for (size_t k = 1; k < t.log_likelihoods.size(); ++k)
    CHECK(t.log_likelihoods[k] >= t.log_likelihoods[k - 1] - 1e-9);
}

TEST_CASE("EM is permutation-equivariant in the vocabulary") {
  auto rename = [](const Tokens& tokens) {
    Tokens out;
    for (const auto& w : tokens) out.push_back("x_" + w);
    return out;
  };
  std::vector<std::pair<Tokens, Tokens>> corpus = toy_corpus();
  std::vector<std::pair<Tokens, Tokens>> renamed;
  for (const auto& [s, t] : corpus) renamed.emplace_back(rename(s), rename(t));
  TranslationTable a = train_ibm1(corpus, {4, 0.0, 1e-7});
  TranslationTable b = train_ibm1(renamed, {4, 0.0, 1e-7});
  CHECK(a.prob("gak", "tidak") == doctest::Approx(b.prob("x_gak", "x_tidak")).epsilon(1e-12));
  CHECK(a.prob("bisa", "bisa") == doctest::Approx(b.prob("x_bisa", "x_bisa")).epsilon(1e-12));
}

TEST_CASE("empty corpus and empty sides") {
  CHECK_THROWS_AS(train_ibm1({}, {}), Error);
  size_t skipped = 0;
  TranslationTable t = train_ibm1({{{"a"}, {"b"}}, {{}, {"b"}}}, {2, 0.0, 1e-7}, &skipped);
  CHECK(skipped == 1);
  CHECK_THROWS_AS(train_ibm1({{{}, {"b"}}}, {2, 0.0, 1e-7}), Error);
}

TEST_CASE("viterbi alignment picks argmax links") {
  TranslationTable t = train_ibm1(toy_corpus(), {10, 0.0, 1e-7});
  AlignmentMatrix m = viterbi_align({"gak", "bisa"}, {"tidak", "bisa"}, t);
  CHECK(m.links == std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}, {1, 1}});

  CHECK(viterbi_align({"gak"}, {}, t).links.empty());
  // unseen target words fall to the floor, NULL wins the tie
  CHECK(viterbi_align({"gak"}, {"zzz", "qqq"}, t).links.empty());
}

TEST_CASE("symmetrize basics") {
  AlignmentMatrix fwd, rev;
  fwd.source_len = rev.target_len = 2;
  fwd.target_len = rev.source_len = 2;
  fwd.add(0, 0);
  rev.add(0, 0);  // rev is target->source, so this is the same link transposed
  for (SymHeuristic h :
       {SymHeuristic::kIntersection, SymHeuristic::kUnion, SymHeuristic::kGrowDiagFinalAnd}) {
    AlignmentMatrix result = symmetrize(fwd, rev, h);
    CHECK(result.links == std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}});
  }

  fwd.add(1, 1);
  AlignmentMatrix inter = symmetrize(fwd, rev, SymHeuristic::kIntersection);
  AlignmentMatrix uni = symmetrize(fwd, rev, SymHeuristic::kUnion);
  CHECK(inter.links == std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}});
  CHECK(uni.links == std::vector<std::pair<uint32_t, uint32_t>>{{0, 0}, {1, 1}});

  AlignmentMatrix wrong;
  wrong.source_len = 3;
  wrong.target_len = 2;
  CHECK_THROWS_AS(symmetrize(fwd, wrong, SymHeuristic::kUnion), Error);
}

TEST_CASE("grow-diag adds a diagonal neighbor of an intersection link") {
  // fwd has the diagonal-adjacent extra link; rev agrees only on (0,0).
  AlignmentMatrix fwd, rev;
  fwd.source_len = rev.target_len = 3;
  fwd.target_len = rev.source_len = 3;
  fwd.add(0, 0);
  fwd.add(1, 1);
  rev.add(0, 0);
  rev.add(2, 2);  // transposed: (2,2)
  AlignmentMatrix gdfa = symmetrize(fwd, rev, SymHeuristic::kGrowDiagFinalAnd);
  // (1,1) neighbors (0,0) and both its words start unaligned -> grown;
  // (2,2) then neighbors (1,1) -> grown as well.
  CHECK(gdfa.has(0, 0));
  CHECK(gdfa.has(1, 1));
  CHECK(gdfa.has(2, 2));

  auto oracle = test_oracles::gdfa_matrix(fwd, rev.transposed());
  CHECK(gdfa.links == oracle);
}

TEST_CASE("gdfa sits between intersection and union; matches the matrix oracle on fuzz") {
  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    uint32_t slen = 1 + static_cast<uint32_t>(rng.below(6));
    uint32_t tlen = 1 + static_cast<uint32_t>(rng.below(6));
    AlignmentMatrix fwd, rev;
    fwd.source_len = slen;
    fwd.target_len = tlen;
    rev.source_len = tlen;
    rev.target_len = slen;
    for (uint32_t i = 0; i < slen; ++i)
      for (uint32_t j = 0; j < tlen; ++j) {
        if (rng.unit() < 0.25) fwd.add(i, j);
        if (rng.unit() < 0.25) rev.add(j, i);
      }
    AlignmentMatrix inter = symmetrize(fwd, rev, SymHeuristic::kIntersection);
    AlignmentMatrix gdfa = symmetrize(fwd, rev, SymHeuristic::kGrowDiagFinalAnd);
    AlignmentMatrix uni = symmetrize(fwd, rev, SymHeuristic::kUnion);
    for (const auto& [i, j] : inter.links) CHECK(gdfa.has(i, j));
    for (const auto& [i, j] : gdfa.links) CHECK(uni.has(i, j));
    CHECK(gdfa.links == test_oracles::gdfa_matrix(fwd, rev.transposed()));
  }
}

TEST_CASE("pharaoh format and table dump round trip") {
  AlignmentMatrix m;
  m.source_len = 3;
  m.target_len = 2;
  m.add(2, 1);
  m.add(0, 0);
  CHECK(m.to_pharaoh() == "0-0 2-1");
  AlignmentMatrix back = AlignmentMatrix::from_pharaoh(m.to_pharaoh(), 3, 2);
  CHECK(back.links == m.links);
  CHECK_THROWS_AS(AlignmentMatrix::from_pharaoh("5-0", 3, 2), Error);

  TranslationTable t = train_ibm1(toy_corpus(), {3, 1e-6, 1e-7});
  auto path = std::filesystem::temp_directory_path() / "stif_ttable_test.txt";
  t.save(path);
  TranslationTable loaded = TranslationTable::load(path);
  CHECK(loaded.prob("gak", "tidak") == doctest::Approx(t.prob("gak", "tidak")).epsilon(1e-6));
  std::filesystem::remove(path);
}
