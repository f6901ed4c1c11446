#ifndef STIF_CORPUS_HPP
#define STIF_CORPUS_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "stif/strutil.hpp"

namespace stif::corpus {

struct RawDocument {
  std::string id;
  std::string text;
  std::string source_tag;
};

enum class Split { kTrain, kDev, kTest };

std::string_view split_name(Split s);
std::optional<Split> split_from_name(std::string_view name);

struct SentencePair {
  std::string informal;
  std::string formal;
  Split split = Split::kTrain;
};

struct ParallelCorpus {
  std::vector<SentencePair> pairs;

  std::vector<const SentencePair*> split(Split s) const;
  size_t split_size(Split s) const;
};

struct MonolingualCorpus {
  std::vector<std::string> sentences;
};

struct CorpusStats {
  size_t n_tokens = 0;
  size_t n_unique_tokens = 0;
  std::map<std::string, size_t> punct_counts;
  size_t n_missing_final_period = 0;
};

struct FilterConfig {
  size_t min_tokens = 5;
  size_t max_tokens = 25;
  double english_ratio_threshold = 0.6;
};

struct FilterSummary {
  size_t input = 0;
  size_t kept = 0;
  size_t dropped_empty = 0;
  size_t dropped_length = 0;
  size_t dropped_english = 0;
  size_t dropped_duplicate = 0;
};

// Hashtag stripping, length window, English-ratio cutoff, exact dedup.
// An empty english_vocab disables the ratio filter.
MonolingualCorpus filter_corpus(const std::vector<RawDocument>& docs, const FilterConfig& config,
                                const std::unordered_set<std::string>& english_vocab,
                                FilterSummary* summary = nullptr);

// Seeded random assignment into train/dev/test with exact sizes.
ParallelCorpus split_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                            std::array<size_t, 3> sizes, uint64_t seed);

// Counts over already-tokenized sentences; punctuation and mask tokens count.
CorpusStats compute_stats(const std::vector<Tokens>& sentences);

inline constexpr std::string_view kStifTag = "<STIF>";

// One `informal <STIF> formal` line per pair of the chosen split.
std::vector<std::string> export_stif_pairs(const ParallelCorpus& corpus, Split split);
std::pair<std::string, std::string> parse_stif_line(std::string_view line);

// --- on-disk formats ---

// Two line-aligned files (<name>.inf / <name>.for).
std::vector<std::pair<std::string, std::string>> load_pairs_two_files(
    const std::filesystem::path& informal_path, const std::filesystem::path& formal_path);
// Single TSV: informal<TAB>formal.
std::vector<std::pair<std::string, std::string>> load_pairs_tsv(const std::filesystem::path& path);
void save_pairs_tsv(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& pairs);
// Accepts either `<stem>.inf` + `<stem>.for` or `<stem>.tsv`.
std::vector<std::pair<std::string, std::string>> load_pairs_auto(const std::filesystem::path& stem);

MonolingualCorpus load_mono(const std::filesystem::path& path);

// Split manifest: `index<TAB>split_label` per line.
void save_split_manifest(const std::filesystem::path& path, const ParallelCorpus& corpus);
ParallelCorpus apply_split_manifest(const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const std::filesystem::path& manifest_path);

// Loads <dir>/{train,dev,test} pair files as one corpus with split labels.
ParallelCorpus load_split_dir(const std::filesystem::path& dir);

std::unordered_set<std::string> load_wordlist(const std::filesystem::path& path);

std::string format_stats_table(const CorpusStats& stats);
std::string format_stats_kv(const CorpusStats& stats);

}  // namespace stif::corpus

#endif  // STIF_CORPUS_HPP
