#ifndef STIF_DECODER_HPP
#define STIF_DECODER_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "stif/ngram_lm.hpp"
#include "stif/phrase_table.hpp"
#include "stif/strutil.hpp"

namespace stif::decoder {

// Log-linear model weights. Phrase feature order matches the phrase table:
// phi(tgt|src), phi(src|tgt), lex(tgt|src), lex(src|tgt).
struct DecodingWeights {
  std::array<double, 4> phrase{0.2, 0.2, 0.2, 0.2};
  double lm = 0.5;
  double distortion = 0.3;
  double word_penalty = -1.0;

  void save(const std::filesystem::path& path) const;
  static DecodingWeights load(const std::filesystem::path& path);
};

struct DecoderConfig {
  int beam_size = 100;
  int distortion_limit = 6;
  int max_phrase_len = 7;
  int max_sentence_len = 100;
  // Raw log10 cost charged when an unknown token passes through unchanged.
  double oov_logprob = -10.0;
};

// Span-indexed cost table; cost[i][j] estimates the best weighted score for
// covering source span [i, j) (phrase features, unigram LM, word penalty).
using FutureCostTable = std::vector<std::vector<double>>;

FutureCostTable precompute_future_cost(const Tokens& sentence, const phrase::PhraseTable& table,
                                       const lm::NGramLanguageModel& lm,
                                       const DecodingWeights& weights,
                                       const DecoderConfig& config = {});

// Coverage-stack beam search. OOV tokens pass through with a fixed penalty;
// mask tokens always decode to themselves.
Tokens decode(const Tokens& sentence, const phrase::PhraseTable& table,
              const lm::NGramLanguageModel& lm, const DecodingWeights& weights,
              const DecoderConfig& config = {});

// decode() plus the model score of the returned hypothesis (for oracles).
struct DecodeResult {
  Tokens output;
  double score = 0.0;
};
DecodeResult decode_scored(const Tokens& sentence, const phrase::PhraseTable& table,
                           const lm::NGramLanguageModel& lm, const DecodingWeights& weights,
                           const DecoderConfig& config = {});

// Seeded random search around the given weights maximizing corpus BLEU on a
// dev set of (source tokens, reference text) pairs; never returns weights
// that score below the starting point.
DecodingWeights tune_weights(const std::vector<std::pair<Tokens, std::string>>& dev,
                             const phrase::PhraseTable& table, const lm::NGramLanguageModel& lm,
                             const DecodingWeights& start, const DecoderConfig& config, int trials,
                             uint64_t seed);

}  // namespace stif::decoder

#endif  // STIF_DECODER_HPP
