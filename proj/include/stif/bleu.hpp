#ifndef STIF_BLEU_HPP
#define STIF_BLEU_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "stif/strutil.hpp"

namespace stif::bleu {

// Clipped n-gram match counts; component-wise addition equals the stats of
// the concatenated corpora.
struct BleuStats {
  std::array<uint64_t, 4> clipped_matches{};
  std::array<uint64_t, 4> hyp_ngrams{};
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
};

struct BleuConfig {
  // Both sides lowercased before scoring; the untranslated baselines the
  // paper-style benchmark tracks produce lowercase output while references
  // are cased, so the default scores case-insensitively. Switchable.
  bool lowercase = true;
};

// mteval-13a style tokenization: punctuation detached, period/comma kept
// inside numbers, dash split after digits.
Tokens tokenize_13a(std::string_view line);

BleuStats sentence_stats(std::string_view hyp, std::string_view ref,
                         const BleuConfig& config = {});

struct BleuScore {
  double bleu = 0.0;  // 0..100
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;
};

// BP * exp(mean ln p_n) * 100; any zero precision gives 0. hyp_len must be > 0.
BleuScore corpus_bleu(const BleuStats& stats);

// Convenience: per-sentence stats summed in order, then scored.
BleuScore corpus_bleu(const std::vector<std::string>& hyps,
                      const std::vector<std::string>& refs, const BleuConfig& config = {});

}  // namespace stif::bleu

#endif  // STIF_BLEU_HPP
