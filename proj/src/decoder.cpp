#include "stif/decoder.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "stif/bleu.hpp"
#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/parallel.hpp"
#include "stif/rng.hpp"
#include "stif/textnorm.hpp"

namespace stif::decoder {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct SpanOption {
  Tokens target;
  double partial_score;  // weighted phrase features + word penalty; LM and
                         // distortion are added at expansion time
};

// Translation options per span [s, e), e - s <= max_phrase_len.
struct SpanOptions {
  size_t n = 0;
  size_t max_len = 1;
  std::vector<std::vector<SpanOption>> by_span;

  size_t index(size_t s, size_t e) const { return s * max_len + (e - s - 1); }
  const std::vector<SpanOption>& at(size_t s, size_t e) const { return by_span[index(s, e)]; }
  std::vector<SpanOption>& at(size_t s, size_t e) { return by_span[index(s, e)]; }
};

// A multi-token option over a span containing mask tokens is admissible only
// if the target carries the same mask tokens, so masked entities always
// survive translation verbatim.
bool preserves_masks(const Tokens& source_span, const Tokens& target) {
  std::map<std::string, int> need;
  for (const auto& t : source_span)
    if (textnorm::is_mask_token(t)) ++need[t];
  if (need.empty()) return true;
  for (const auto& t : target)
    if (textnorm::is_mask_token(t)) --need[t];
  for (const auto& [mask, n] : need)
    if (n != 0) return false;
  return true;
}

SpanOptions collect_options(const Tokens& sentence, const phrase::PhraseTable& table,
                            const DecodingWeights& weights, const DecoderConfig& config) {
  SpanOptions opts;
  opts.n = sentence.size();
  opts.max_len = std::min<size_t>(config.max_phrase_len, std::max<size_t>(opts.n, 1));
  opts.by_span.assign(opts.n * opts.max_len, {});

  for (size_t s = 0; s < opts.n; ++s) {
    for (size_t e = s + 1; e <= std::min(opts.n, s + opts.max_len); ++e) {
      Tokens span(sentence.begin() + s, sentence.begin() + e);
      bool single_mask = (e - s == 1) && textnorm::is_mask_token(span[0]);
      if (!single_mask) {
        if (const auto* found = table.find(span)) {
          for (const phrase::ScoredOption& opt : *found) {
            if (!preserves_masks(span, opt.target)) continue;
            double score = weights.phrase[0] * std::log10(opt.phi_forward) +
                           weights.phrase[1] * std::log10(opt.phi_reverse) +
                           weights.phrase[2] * std::log10(opt.lex_forward) +
                           weights.phrase[3] * std::log10(opt.lex_reverse) +
                           weights.word_penalty * static_cast<double>(opt.target.size());
            opts.at(s, e).push_back({opt.target, score});
          }
        }
      }
      if (e - s == 1 && opts.at(s, e).empty()) {
        // Identity fall-back: free for mask tokens, penalized for OOVs.
        double score = (single_mask ? 0.0 : config.oov_logprob) + weights.word_penalty;
        opts.at(s, e).push_back({Tokens{span[0]}, score});
      }
    }
  }
  return opts;
}

double unigram_estimate(const Tokens& target, const lm::NGramLanguageModel& lm) {
  double sum = 0.0;
  for (const std::string& w : target) sum += lm.score_word({}, w);
  return sum;
}

FutureCostTable future_costs(const SpanOptions& opts, const lm::NGramLanguageModel& lm,
                             const DecodingWeights& weights) {
  size_t n = opts.n;
  FutureCostTable cost(n + 1, std::vector<double>(n + 1, kNegInf));
  for (size_t s = 0; s < n; ++s) {
    for (size_t e = s + 1; e <= std::min(n, s + opts.max_len); ++e) {
      double best = kNegInf;
      for (const SpanOption& opt : opts.at(s, e)) {
        double v = opt.partial_score + weights.lm * unigram_estimate(opt.target, lm);
        best = std::max(best, v);
      }
      cost[s][e] = best;
    }
  }
  for (size_t len = 2; len <= n; ++len) {
    for (size_t s = 0; s + len <= n; ++s) {
      size_t e = s + len;
      for (size_t m = s + 1; m < e; ++m) {
        if (cost[s][m] == kNegInf || cost[m][e] == kNegInf) continue;
        cost[s][e] = std::max(cost[s][e], cost[s][m] + cost[m][e]);
      }
    }
  }
  return cost;
}

struct Coverage {
  uint64_t lo = 0, hi = 0;

  bool test(size_t i) const { return ((i < 64 ? lo >> i : hi >> (i - 64)) & 1) != 0; }
  void set(size_t i) {
    if (i < 64)
      lo |= uint64_t{1} << i;
    else
      hi |= uint64_t{1} << (i - 64);
  }
  size_t count() const { return std::popcount(lo) + std::popcount(hi); }
  bool operator==(const Coverage&) const = default;
};

struct Hypothesis {
  Coverage coverage;
  int prev_end = -1;  // inclusive source index of the last covered phrase end
  lm::NGramLanguageModel::State lm_state;
  double score = 0.0;
  double future = 0.0;
  int parent = -1;
  const SpanOption* applied = nullptr;
};

std::string recombination_key(const Hypothesis& h) {
  std::string key;
  key.reserve(40);
  key += std::to_string(h.coverage.lo);
  key += ',';
  key += std::to_string(h.coverage.hi);
  key += ',';
  key += std::to_string(h.prev_end);
  for (const std::string& w : h.lm_state.context) {
    key += '|';
    key += w;
  }
  return key;
}

double gap_future(const Coverage& cov, size_t n, const FutureCostTable& fc) {
  double sum = 0.0;
  size_t i = 0;
  while (i < n) {
    if (cov.test(i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < n && !cov.test(j)) ++j;
    sum += fc[i][j];
    i = j;
  }
  return sum;
}

struct Search {
  const Tokens& sentence;
  const lm::NGramLanguageModel& lm;
  const DecodingWeights& weights;
  const DecoderConfig& config;
  SpanOptions opts;
  FutureCostTable fc;
  std::vector<Hypothesis> arena;
  std::vector<std::vector<int>> stacks;

  void prune(std::vector<int>& stack) {
    if (stack.size() <= static_cast<size_t>(config.beam_size)) return;
    std::stable_sort(stack.begin(), stack.end(), [&](int a, int b) {
      return arena[a].score + arena[a].future > arena[b].score + arena[b].future;
    });
    stack.resize(config.beam_size);
  }

  void run() {
    size_t n = sentence.size();
    stacks.assign(n + 1, {});
    Hypothesis init;
    init.lm_state = lm.begin_state();
    init.future = n == 0 ? 0.0 : gap_future(init.coverage, n, fc);
    arena.push_back(init);
    stacks[0].push_back(0);

    std::unordered_map<std::string, int> recomb;
    for (size_t covered = 0; covered < n; ++covered) {
      prune(stacks[covered]);
      for (int hi : stacks[covered]) {
        for (size_t s = 0; s < n; ++s) {
          if (arena[hi].coverage.test(s)) continue;
          int jump =
              std::abs(static_cast<int>(s) - arena[hi].prev_end - 1);
          if (jump > config.distortion_limit) continue;
          size_t e_max = std::min(n, s + opts.max_len);
          for (size_t e = s + 1; e <= e_max; ++e) {
            if (arena[hi].coverage.test(e - 1)) break;  // span must be contiguous free
            const auto& span_opts = opts.at(s, e);
            if (span_opts.empty()) continue;
            for (const SpanOption& opt : span_opts) expand(hi, s, e, jump, opt, recomb);
          }
        }
      }
    }
  }

  void expand(int parent, size_t s, size_t e, int jump, const SpanOption& opt,
              std::unordered_map<std::string, int>& recomb) {
    const Hypothesis& src = arena[parent];
    Hypothesis h;
    h.coverage = src.coverage;
    for (size_t i = s; i < e; ++i) h.coverage.set(i);
    h.prev_end = static_cast<int>(e) - 1;
    h.lm_state = src.lm_state;
    double lm_score = 0.0;
    for (const std::string& w : opt.target) lm_score += lm.score_next(h.lm_state, w);
    h.score = src.score + opt.partial_score + weights.lm * lm_score +
              weights.distortion * (-static_cast<double>(jump));
    size_t n = sentence.size();
    size_t covered = h.coverage.count();
    if (covered == n) {
      h.score += weights.lm * lm.score_end(h.lm_state);
      h.future = 0.0;
    } else {
      h.future = gap_future(h.coverage, n, fc);
    }
    h.parent = parent;
    h.applied = &opt;

    std::string key = recombination_key(h);
    key += ';';
    key += std::to_string(covered);
    auto it = recomb.find(key);
    if (it != recomb.end()) {
      if (arena[it->second].score >= h.score) return;
      arena[it->second] = h;  // replace in place; stack index stays valid
      return;
    }
    arena.push_back(h);
    int idx = static_cast<int>(arena.size()) - 1;
    recomb.emplace(std::move(key), idx);
    stacks[covered].push_back(idx);
  }
};

}  // namespace

FutureCostTable precompute_future_cost(const Tokens& sentence, const phrase::PhraseTable& table,
                                       const lm::NGramLanguageModel& lm,
                                       const DecodingWeights& weights,
                                       const DecoderConfig& config) {
  SpanOptions opts = collect_options(sentence, table, weights, config);
  return future_costs(opts, lm, weights);
}

DecodeResult decode_scored(const Tokens& sentence, const phrase::PhraseTable& table,
                           const lm::NGramLanguageModel& lm, const DecodingWeights& weights,
                           const DecoderConfig& config) {
  if (sentence.empty()) return {};
  if (sentence.size() > static_cast<size_t>(config.max_sentence_len))
    throw Error("decode: sentence exceeds " + std::to_string(config.max_sentence_len) + " tokens");
  if (config.beam_size < 1) throw Error("decode: beam_size must be >= 1");

  Search search{sentence, lm, weights, config,
                collect_options(sentence, table, weights, config), {}, {}, {}};
  search.fc = future_costs(search.opts, lm, weights);
  search.run();

  const auto& final_stack = search.stacks[sentence.size()];
  if (final_stack.empty()) throw Error("decode: no complete hypothesis");
  int best = final_stack[0];
  for (int hi : final_stack)
    if (search.arena[hi].score > search.arena[best].score) best = hi;

  std::vector<const SpanOption*> chain;
  for (int at = best; at >= 0 && search.arena[at].applied != nullptr;
       at = search.arena[at].parent)
    chain.push_back(search.arena[at].applied);
  DecodeResult result;
  result.score = search.arena[best].score;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    result.output.insert(result.output.end(), (*it)->target.begin(), (*it)->target.end());
  return result;
}

Tokens decode(const Tokens& sentence, const phrase::PhraseTable& table,
              const lm::NGramLanguageModel& lm, const DecodingWeights& weights,
              const DecoderConfig& config) {
  return decode_scored(sentence, table, lm, weights, config).output;
}

void DecodingWeights::save(const std::filesystem::path& path) const {
  KvFile kv;
  for (size_t k = 0; k < 4; ++k) kv.set("phrase" + std::to_string(k), format_sig6(phrase[k]));
  kv.set("lm", format_sig6(lm));
  kv.set("distortion", format_sig6(distortion));
  kv.set("word_penalty", format_sig6(word_penalty));
  kv.save(path);
}

DecodingWeights DecodingWeights::load(const std::filesystem::path& path) {
  KvFile kv = KvFile::load(path);
  DecodingWeights w;
  for (size_t k = 0; k < 4; ++k) w.phrase[k] = kv.get_double("phrase" + std::to_string(k));
  w.lm = kv.get_double("lm");
  w.distortion = kv.get_double("distortion");
  w.word_penalty = kv.get_double("word_penalty");
  return w;
}

DecodingWeights tune_weights(const std::vector<std::pair<Tokens, std::string>>& dev,
                             const phrase::PhraseTable& table, const lm::NGramLanguageModel& lm,
                             const DecodingWeights& start, const DecoderConfig& config, int trials,
                             uint64_t seed) {
  if (dev.empty()) throw Error("tune_weights: empty dev set");

  auto dev_bleu = [&](const DecodingWeights& w) {
    std::vector<std::string> hyps = parallel_map<std::string>(dev.size(), [&](size_t i) {
      return textnorm::detokenize(decode(dev[i].first, table, lm, w, config));
    });
    bleu::BleuStats total;
    for (size_t i = 0; i < dev.size(); ++i)
      total += bleu::sentence_stats(hyps[i], dev[i].second);
    return bleu::corpus_bleu(total).bleu;
  };

  DecodingWeights best = start;
  double best_score = dev_bleu(start);
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    DecodingWeights w = start;
    for (size_t k = 0; k < 4; ++k) w.phrase[k] = start.phrase[k] + (rng.unit() - 0.5) * 0.3;
    w.lm = start.lm + (rng.unit() - 0.5) * 0.6;
    w.distortion = start.distortion + (rng.unit() - 0.5) * 0.5;
    w.word_penalty = start.word_penalty + (rng.unit() - 0.5) * 1.0;
    double score = dev_bleu(w);
    if (score > best_score) {
      best_score = score;
      best = w;
    }
  }
  return best;
}

}  // namespace stif::decoder
