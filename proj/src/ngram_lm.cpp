#include "stif/ngram_lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"

namespace stif::lm {

namespace {

std::string join_gram(std::span<const std::string> words) {
  std::string s;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) s += ' ';
    s += words[i];
  }
  return s;
}

bool starts_with_begin_marker(const std::string& gram) {
  return gram == kSentenceBegin ||
         gram.compare(0, kSentenceBegin.size() + 1, std::string(kSentenceBegin) + " ") == 0;
}

}  // namespace

void NGramLanguageModel::set_order(int order) {
  order_ = order;
  grams_.assign(order, {});
}

void NGramLanguageModel::insert(int gram_order, const std::string& gram, Entry entry) {
  grams_[gram_order - 1][gram] = entry;
  if (gram_order == 1 && gram != kSentenceBegin && gram != kUnknown) vocab_.insert(gram);
}

const NGramLanguageModel::Entry* NGramLanguageModel::find(int gram_order,
                                                          const std::string& gram) const {
  const auto& level = grams_[gram_order - 1];
  auto it = level.find(gram);
  return it == level.end() ? nullptr : &it->second;
}

NGramLanguageModel::Entry* NGramLanguageModel::find_mutable(int gram_order,
                                                            const std::string& gram) {
  auto& level = grams_[gram_order - 1];
  auto it = level.find(gram);
  return it == level.end() ? nullptr : &it->second;
}

double NGramLanguageModel::score_word(std::span<const std::string> context,
                                      const std::string& word) const {
  if (grams_[0].find(word) == grams_[0].end() || word == kUnknown) return unk_logprob_;
  size_t m = std::min(context.size(), static_cast<size_t>(order_ - 1));
  std::span<const std::string> ctx = context.subspan(context.size() - m, m);
  double backoff_sum = 0.0;
  for (size_t k = m; /**/; --k) {
    std::string gram = join_gram(ctx.subspan(ctx.size() - k, k));
    if (k > 0) {
      gram += ' ';
      gram += word;
    } else {
      gram = word;
    }
    if (const Entry* e = find(static_cast<int>(k) + 1, gram)) return backoff_sum + e->logprob;
    if (k == 0) break;  // unigram must exist for in-vocab words
    // Not found at this order: add the context's backoff weight and shorten.
    std::string ctx_gram = join_gram(ctx.subspan(ctx.size() - k, k));
    if (const Entry* c = find(static_cast<int>(k), ctx_gram); c && c->has_backoff)
      backoff_sum += c->backoff;
  }
  return unk_logprob_;
}

double NGramLanguageModel::score_sequence(const Tokens& tokens) const {
  State state = begin_state();
  double total = 0.0;
  for (const std::string& w : tokens) total += score_next(state, w);
  return total + score_end(state);
}

NGramLanguageModel::State NGramLanguageModel::begin_state() const {
  return State{{std::string(kSentenceBegin)}};
}

double NGramLanguageModel::score_next(State& state, const std::string& word) const {
  double lp = score_word(state.context, word);
  state.context.push_back(word);
  size_t keep = static_cast<size_t>(order_ > 0 ? order_ - 1 : 0);
  if (state.context.size() > keep)
    state.context.erase(state.context.begin(),
                        state.context.end() - static_cast<ptrdiff_t>(keep));
  return lp;
}

double NGramLanguageModel::score_end(const State& state) const {
  return score_word(state.context, std::string(kSentenceEnd));
}

NGramLanguageModel train_lm(const std::vector<Tokens>& sentences, const LmConfig& config) {
  if (config.order < 1) throw Error("train_lm: order must be >= 1");
  if (sentences.empty()) throw Error("train_lm: no sentences");
  size_t total_tokens = 0;
  for (const Tokens& s : sentences) total_tokens += s.size();
  if (total_tokens < static_cast<size_t>(config.order))
    throw Error("train_lm: corpus has fewer tokens than the model order");

  const int order = config.order;
  const double D = config.discount;

  // Raw counts per order over <s> ... </s> padded sentences.
  std::vector<std::unordered_map<std::string, size_t>> raw(order);
  for (const Tokens& sent : sentences) {
    Tokens padded;
    padded.reserve(sent.size() + 2);
    padded.emplace_back(kSentenceBegin);
    padded.insert(padded.end(), sent.begin(), sent.end());
    padded.emplace_back(kSentenceEnd);
    for (int k = 1; k <= order; ++k) {
      for (size_t i = 0; i + k <= padded.size(); ++i) {
        ++raw[k - 1][join_gram(std::span(padded).subspan(i, k))];
      }
    }
  }

  // Continuation counts: number of distinct predecessors of each gram.
  std::vector<std::unordered_map<std::string, size_t>> cont(order);
  for (int k = 1; k < order; ++k) {
    for (const auto& [gram, c] : raw[k]) {
      size_t space = gram.find(' ');
      ++cont[k - 1][gram.substr(space + 1)];
    }
  }

  // Kneser-Ney adjusted counts: raw at the highest order and for grams
  // starting with <s>, continuation counts otherwise.
  auto adjusted = [&](int k, const std::string& gram) -> size_t {
    if (k == order || starts_with_begin_marker(gram)) {
      auto it = raw[k - 1].find(gram);
      return it == raw[k - 1].end() ? 0 : it->second;
    }
    auto it = cont[k - 1].find(gram);
    return it == cont[k - 1].end() ? 0 : it->second;
  };

  NGramLanguageModel model;
  model.set_order(order);
  model.set_unk_logprob(config.unk_logprob);

  // Unigram distribution (no discount at this level).
  {
    std::vector<std::string> words;
    for (const auto& [gram, c] : raw[0]) words.push_back(gram);
    std::sort(words.begin(), words.end());
    double denom = 0.0;
    for (const std::string& w : words)
      if (w != kSentenceBegin) denom += static_cast<double>(adjusted(1, w));
    for (const std::string& w : words) {
      NGramLanguageModel::Entry e;
      if (w == kSentenceBegin) {
        e.logprob = -99.0;
      } else {
        e.logprob = quantize_fixed6(std::log10(static_cast<double>(adjusted(1, w)) / denom));
      }
      model.insert(1, w, e);
    }
    model.insert(1, std::string(kUnknown), {quantize_fixed6(config.unk_logprob), 0.0, false});
  }

  // Higher orders: discounted adjusted counts interpolated with the lower
  // distribution; the interpolation weight becomes the context's backoff.
  for (int k = 2; k <= order; ++k) {
    // Group k-grams by context.
    std::unordered_map<std::string, std::vector<std::string>> by_context;
    std::vector<std::string> context_order;
    {
      std::vector<std::string> grams;
      grams.reserve(raw[k - 1].size());
      for (const auto& [gram, c] : raw[k - 1]) grams.push_back(gram);
      std::sort(grams.begin(), grams.end());
      for (const std::string& gram : grams) {
        size_t last_space = gram.rfind(' ');
        std::string ctx = gram.substr(0, last_space);
        auto [it, inserted] = by_context.emplace(ctx, std::vector<std::string>{});
        if (inserted) context_order.push_back(ctx);
        it->second.push_back(gram.substr(last_space + 1));
      }
    }

    for (const std::string& ctx : context_order) {
      const std::vector<std::string>& continuations = by_context.at(ctx);
      double denom = 0.0;
      for (const std::string& w : continuations)
        denom += static_cast<double>(adjusted(k, ctx + " " + w));
      if (denom <= 0.0) continue;
      double lambda = D * static_cast<double>(continuations.size()) / denom;

      Tokens ctx_words = split_whitespace(ctx);
      Tokens lower_ctx(ctx_words.begin() + 1, ctx_words.end());
      for (const std::string& w : continuations) {
        double count = static_cast<double>(adjusted(k, ctx + " " + w));
        double lower = std::pow(10.0, model.score_word(lower_ctx, w));
        double p = (count - D) / denom + lambda * lower;
        model.insert(k, ctx + " " + w, {quantize_fixed6(std::log10(p)), 0.0, false});
      }
      // Attach the interpolation mass as the context's backoff weight.
      NGramLanguageModel::Entry* ctx_entry = model.find_mutable(k - 1, ctx);
      if (!ctx_entry) throw Error("train_lm: context without an entry: " + ctx);
      ctx_entry->backoff = quantize_fixed6(std::log10(lambda));
      ctx_entry->has_backoff = true;
    }
  }
  return model;
}

void NGramLanguageModel::save_arpa(const std::filesystem::path& path) const {
  std::string out = "\\data\\\n";
  for (int k = 1; k <= order_; ++k)
    out += "ngram " + std::to_string(k) + "=" + std::to_string(grams_[k - 1].size()) + "\n";
  for (int k = 1; k <= order_; ++k) {
    out += "\n\\" + std::to_string(k) + "-grams:\n";
    std::vector<std::string> keys;
    keys.reserve(grams_[k - 1].size());
    for (const auto& [gram, e] : grams_[k - 1]) keys.push_back(gram);
    std::sort(keys.begin(), keys.end());
    for (const std::string& gram : keys) {
      const Entry& e = grams_[k - 1].at(gram);
      out += format_fixed6(e.logprob);
      out += '\t';
      out += gram;
      if (e.has_backoff) {
        out += '\t';
        out += format_fixed6(e.backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  write_file(path, out);
}

NGramLanguageModel load_arpa_text(const std::string& text) {
  NGramLanguageModel model;
  std::vector<std::string> lines = split_on(text, '\n');
  size_t i = 0;
  while (i < lines.size() && trim(lines[i]) != "\\data\\") ++i;
  if (i == lines.size()) throw Error("ARPA: missing \\data\\ header");
  ++i;
  int order = 0;
  for (; i < lines.size(); ++i) {
    std::string line = trim(lines[i]);
    if (line.empty()) break;
    if (line.rfind("ngram ", 0) != 0) throw Error("ARPA: bad count line: " + line);
    order = std::max(order, std::atoi(line.c_str() + 6));
  }
  if (order < 1) throw Error("ARPA: no ngram counts");
  model.set_order(order);

  int current = 0;
  for (; i < lines.size(); ++i) {
    std::string line = lines[i];
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (trimmed == "\\end\\") break;
    if (trimmed.size() > 1 && trimmed[0] == '\\' && trimmed.back() == ':') {
      current = std::atoi(trimmed.c_str() + 1);
      if (current < 1 || current > order) throw Error("ARPA: bad section: " + trimmed);
      continue;
    }
    if (current == 0) throw Error("ARPA: entry before any section: " + trimmed);
    std::vector<std::string> fields = split_on(line, '\t');
    if (fields.size() < 2) throw Error("ARPA: bad entry: " + line);
    NGramLanguageModel::Entry e;
    e.logprob = std::strtod(fields[0].c_str(), nullptr);
    if (fields.size() >= 3) {
      e.backoff = std::strtod(fields[2].c_str(), nullptr);
      e.has_backoff = true;
    }
    model.insert(current, fields[1], e);
  }
  if (const auto* unk = model.find(1, std::string(kUnknown))) model.set_unk_logprob(unk->logprob);
  return model;
}

NGramLanguageModel NGramLanguageModel::load_arpa(const std::filesystem::path& path) {
  return load_arpa_text(read_file(path));
}

}  // namespace stif::lm
