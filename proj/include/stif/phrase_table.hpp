#ifndef STIF_PHRASE_TABLE_HPP
#define STIF_PHRASE_TABLE_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "stif/align.hpp"
#include "stif/strutil.hpp"

namespace stif::phrase {

// A consistent rectangle in the alignment matrix: source span [i1, i2],
// target span [j1, j2], both inclusive.
struct PhraseBox {
  uint32_t i1, i2, j1, j2;
  auto operator<=>(const PhraseBox&) const = default;
};

// Exactly the boxes consistent with the alignment (no link crosses the
// border, at least one link inside, unaligned boundary extensions included).
std::vector<PhraseBox> extract_boxes(const align::AlignmentMatrix& alignment,
                                     size_t max_phrase_len);

struct PhrasePair {
  Tokens source;
  Tokens target;
  std::vector<std::pair<uint8_t, uint8_t>> alignment;  // in-phrase links, sorted
};

std::vector<PhrasePair> extract_phrases(const Tokens& source, const Tokens& target,
                                        const align::AlignmentMatrix& alignment,
                                        size_t max_phrase_len);

struct ScoredOption {
  Tokens target;
  double phi_forward;   // phi(tgt|src)
  double phi_reverse;   // phi(src|tgt)
  double lex_forward;   // lex(tgt|src)
  double lex_reverse;   // lex(src|tgt)
};

struct ScoreConfig {
  size_t top_k = 20;  // options kept per source phrase
};

class PhraseTable {
 public:
  // Options sorted by phi_forward descending (target text breaks ties).
  const std::vector<ScoredOption>* find(const Tokens& source) const;
  const std::vector<ScoredOption>* find_joined(const std::string& source) const;

  void add(const std::string& source, ScoredOption option);
  // Sorts every option list by phi_forward descending and truncates to top_k.
  void finalize(size_t top_k);
  size_t source_count() const { return options_.size(); }
  size_t option_count() const;

  // Moses text format: `src ||| tgt ||| p1 p2 p3 p4`, %.6g probabilities,
  // sorted; write -> read -> write is byte-identical.
  void save(const std::filesystem::path& path) const;
  static PhraseTable load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, std::vector<ScoredOption>> options_;
};

// Relative-frequency and lexical-weight scoring over aggregated counts.
PhraseTable score_table(const std::vector<PhrasePair>& all_pairs,
                        const align::TranslationTable& lex_forward,
                        const align::TranslationTable& lex_reverse,
                        const ScoreConfig& config = {});

}  // namespace stif::phrase

#endif  // STIF_PHRASE_TABLE_HPP
