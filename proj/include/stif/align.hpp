#ifndef STIF_ALIGN_HPP
#define STIF_ALIGN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stif/strutil.hpp"

namespace stif::align {

// Insertion-ordered string<->id mapping; ids are dense and deterministic for
// a fixed input order.
class Vocab {
 public:
  uint32_t intern(const std::string& word);
  std::optional<uint32_t> find(const std::string& word) const;
  const std::string& word(uint32_t id) const { return words_[id]; }
  size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<std::string> words_;
};

// Lexical translation probabilities t(target | source) from IBM Model 1.
// Source id 0 is the NULL word. Rows sum to 1 within 1e-6.
struct TranslationTable {
  static constexpr const char* kNullSurface = "<null>";

  Vocab source_vocab;  // id 0 reserved for NULL
  Vocab target_vocab;
  std::vector<std::unordered_map<uint32_t, double>> rows;
  double floor = 1e-7;
  std::vector<double> log_likelihoods;  // corpus log-likelihood per EM iteration

  // Probability with floor for unseen pairs/words.
  double prob(const std::string& source, const std::string& target) const;
  double prob_null(const std::string& target) const;

  // `source target prob` lines, sorted; probabilities %.6g.
  void save(const std::filesystem::path& path) const;
  static TranslationTable load(const std::filesystem::path& path);
};

struct AlignmentMatrix {
  uint32_t source_len = 0;
  uint32_t target_len = 0;
  std::vector<std::pair<uint32_t, uint32_t>> links;  // sorted (i, j), unique

  bool has(uint32_t i, uint32_t j) const;
  void add(uint32_t i, uint32_t j);  // keeps links sorted/unique
  std::string to_pharaoh() const;
  static AlignmentMatrix from_pharaoh(std::string_view line, uint32_t source_len,
                                      uint32_t target_len);
  AlignmentMatrix transposed() const;
};

struct Ibm1Config {
  int iterations = 5;
  double prune_threshold = 1e-6;
  double floor = 1e-7;
};

// EM from uniform initialization, NULL prepended to every source sentence.
// Pairs with an empty side are skipped (counted via `skipped` if given).
TranslationTable train_ibm1(const std::vector<std::pair<Tokens, Tokens>>& corpus,
                            const Ibm1Config& config = {}, size_t* skipped = nullptr);

// Each target word linked to its argmax source word; NULL wins ties.
AlignmentMatrix viterbi_align(const Tokens& source, const Tokens& target,
                              const TranslationTable& table);

enum class SymHeuristic { kIntersection, kUnion, kGrowDiagFinalAnd };

std::optional<SymHeuristic> heuristic_from_name(std::string_view name);

// `reverse` is the target->source direction alignment (it gets transposed).
AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& reverse,
                           SymHeuristic heuristic);

}  // namespace stif::align

#endif  // STIF_ALIGN_HPP
