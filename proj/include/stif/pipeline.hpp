#ifndef STIF_PIPELINE_HPP
#define STIF_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stif/align.hpp"
#include "stif/corpus.hpp"
#include "stif/decoder.hpp"
#include "stif/kvfile.hpp"
#include "stif/lexicon.hpp"
#include "stif/ngram_lm.hpp"
#include "stif/phrase_table.hpp"
#include "stif/textnorm.hpp"

namespace stif::pipeline {

struct SystemConfig {
  textnorm::NormalizationConfig norm;  // informal-side normalization
  align::Ibm1Config ibm1;
  size_t max_phrase_len = 7;
  size_t phrase_top_k = 20;
  lm::LmConfig lm;
  bool lm_include_synthetic = false;
  decoder::DecodingWeights weights;
  decoder::DecoderConfig dec;
  int tune_trials = 0;
  uint64_t seed = 42;
};

// Informal side: lowercase + repeat squeeze + tokenize + mask.
Tokens preprocess_informal(const std::string& text, const SystemConfig& config);
// Formal side: lowercase + tokenize + mask (no squeeze; annotated text).
Tokens preprocess_formal(const std::string& text, const SystemConfig& config);
// Masking applied to references so they stay comparable with masked output.
std::string reference_for_eval(const std::string& formal_text, const SystemConfig& config);

struct TrainedSystem {
  phrase::PhraseTable table;
  lm::NGramLanguageModel lm;
  decoder::DecodingWeights weights;
  KvFile provenance;

  void save(const std::filesystem::path& dir) const;
  static TrainedSystem load(const std::filesystem::path& dir);
};

// normalize -> align both directions -> symmetrize -> extract -> score ->
// train LM -> optional weight tuning, over parallel train pairs plus any
// synthetic pairs. Stage failures carry the stage name.
TrainedSystem train_system(const corpus::ParallelCorpus& parallel,
                           const std::vector<std::pair<std::string, std::string>>* synthetic,
                           const SystemConfig& config);

std::vector<std::string> translate_corpus(const TrainedSystem& system,
                                          const std::vector<std::string>& informal_lines,
                                          const SystemConfig& config);

// Corpus BLEU of the system on one split of the corpus.
double evaluate_split(const TrainedSystem& system, const corpus::ParallelCorpus& corpus,
                      corpus::Split split, const SystemConfig& config);

// Seeded sample of the monolingual pool, decoded into synthetic pairs;
// pairs with an empty translation are dropped.
std::vector<std::pair<std::string, std::string>> forward_translate(
    const TrainedSystem& system, const corpus::MonolingualCorpus& mono, size_t sample_size,
    uint64_t seed, const SystemConfig& config);

struct IterationReport {
  int iteration = 0;
  double dev_bleu = 0.0;
  double test_bleu = 0.0;
  size_t synthetic_size = 0;
  std::string dir;
};

struct IterateOptions {
  int iterations = 1;
  size_t sample_size = 2500;
  bool fixed_sample = false;  // resample per iteration unless set
  std::filesystem::path run_dir;
};

// Iteration 0 trains on the parallel data alone; iteration i >= 1 adds
// synthetic pairs produced by the iteration i-1 system. Artifacts land in
// run_dir/iter<k>/; reports are also written there as they complete.
std::vector<IterationReport> iterate(const corpus::ParallelCorpus& parallel,
                                     const corpus::MonolingualCorpus& mono,
                                     const IterateOptions& options, const SystemConfig& config);

// Table-IV style benchmark: No Modification, Dictionary-Based, PBSMT.
struct BenchmarkRow {
  std::string method;
  double bleu = 0.0;
  double seconds = 0.0;
};
std::vector<BenchmarkRow> benchmark(const corpus::ParallelCorpus& corpus,
                                    const lexicon::InformalDictionary& dict,
                                    const SystemConfig& config);

}  // namespace stif::pipeline

#endif  // STIF_PIPELINE_HPP
