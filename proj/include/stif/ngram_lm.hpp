#ifndef STIF_NGRAM_LM_HPP
#define STIF_NGRAM_LM_HPP

#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stif/strutil.hpp"

namespace stif::lm {

inline constexpr std::string_view kSentenceBegin = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknown = "<unk>";

// Backoff n-gram model, log10 domain. Stored probabilities are full
// interpolated Kneser-Ney values; backoff weights carry the interpolation
// mass, so p(w | h) = entry(hw) when present, else bo(h) + p(w | shorter h).
class NGramLanguageModel {
 public:
  struct Entry {
    double logprob = 0.0;
    double backoff = 0.0;
    bool has_backoff = false;
  };

  int order() const { return order_; }
  double unk_logprob() const { return unk_logprob_; }
  bool in_vocab(const std::string& word) const { return vocab_.count(word) > 0; }
  const std::unordered_set<std::string>& vocab() const { return vocab_; }

  // log10 p(word | context); context is the raw history, longest suffix used.
  double score_word(std::span<const std::string> context, const std::string& word) const;

  // Sum of conditional log10 probabilities with <s> ... </s> padding.
  double score_sequence(const Tokens& tokens) const;

  // Incremental scoring state for the decoder; agrees with score_sequence.
  struct State {
    std::vector<std::string> context;
  };
  State begin_state() const;
  double score_next(State& state, const std::string& word) const;
  double score_end(const State& state) const;

  // ARPA text format; byte-identical across write -> read -> write.
  void save_arpa(const std::filesystem::path& path) const;
  static NGramLanguageModel load_arpa(const std::filesystem::path& path);

  // Construction hooks used by the trainer/loader.
  void set_order(int order);
  void set_unk_logprob(double lp) { unk_logprob_ = lp; }
  void insert(int gram_order, const std::string& gram, Entry entry);
  const Entry* find(int gram_order, const std::string& gram) const;
  Entry* find_mutable(int gram_order, const std::string& gram);
  size_t gram_count(int gram_order) const { return grams_[gram_order - 1].size(); }

 private:
  int order_ = 0;
  double unk_logprob_ = -7.0;
  std::vector<std::unordered_map<std::string, Entry>> grams_;  // [k-1] = order k
  std::unordered_set<std::string> vocab_;                      // predictable words
};

struct LmConfig {
  int order = 3;
  double discount = 0.75;
  double unk_logprob = -7.0;
};

// Interpolated Kneser-Ney with a fixed discount; raw counts at the highest
// order and for n-grams starting with <s>, continuation counts elsewhere.
NGramLanguageModel train_lm(const std::vector<Tokens>& sentences, const LmConfig& config = {});

}  // namespace stif::lm

#endif  // STIF_NGRAM_LM_HPP
