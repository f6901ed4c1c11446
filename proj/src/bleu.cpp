#include "stif/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "stif/error.hpp"

namespace stif::bleu {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

bool in_punct_class(char c) {
  // ASCII ranges of the 13a punctuation class; period, comma and dash are
  // handled by the digit-context rules below.
  unsigned char u = static_cast<unsigned char>(c);
  return (u >= 0x20 && u <= 0x26) || (u >= 0x28 && u <= 0x2B) || u == 0x2F ||
         (u >= 0x3A && u <= 0x40) || (u >= 0x5B && u <= 0x60) || (u >= 0x7B && u <= 0x7E);
}

bool digit(char c) { return c >= '0' && c <= '9'; }

// The reference tokenizer applies its rules as sequential regex
// substitutions with left-to-right non-overlapping matches; each pass below
// reproduces one rule exactly.
std::string pad_punct(const std::string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char c : s) {
    if (in_punct_class(c)) {
      out += ' ';
      out += c;
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

// ([^0-9])([.,]) -> "\1 \2 "
std::string split_period_before(const std::string& s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && !digit(s[i]) && (s[i + 1] == '.' || s[i + 1] == ',')) {
      out += s[i];
      out += ' ';
      out += s[i + 1];
      out += ' ';
      i += 2;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

// ([.,])([^0-9]) -> " \1 \2"
std::string split_period_after(const std::string& s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && (s[i] == '.' || s[i] == ',') && !digit(s[i + 1])) {
      out += ' ';
      out += s[i];
      out += ' ';
      out += s[i + 1];
      i += 2;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

// ([0-9])(-) -> "\1 - "
std::string split_digit_dash(const std::string& s) {
  std::string out;
  size_t i = 0;
  while (i < s.size()) {
    if (i + 1 < s.size() && digit(s[i]) && s[i + 1] == '-') {
      out += s[i];
      out += " - ";
      i += 2;
    } else {
      out += s[i];
      ++i;
    }
  }
  return out;
}

}  // namespace

Tokens tokenize_13a(std::string_view line) {
  std::string norm(line);
  replace_all(norm, "<skipped>", "");
  replace_all(norm, "-\n", "");
  replace_all(norm, "\n", " ");
  replace_all(norm, "&quot;", "\"");
  replace_all(norm, "&amp;", "&");
  replace_all(norm, "&lt;", "<");
  replace_all(norm, "&gt;", ">");
  norm = " " + norm + " ";
  norm = pad_punct(norm);
  norm = split_period_before(norm);
  norm = split_period_after(norm);
  norm = split_digit_dash(norm);
  return split_whitespace(norm);
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (size_t n = 0; n < 4; ++n) {
    clipped_matches[n] += other.clipped_matches[n];
    hyp_ngrams[n] += other.hyp_ngrams[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

namespace {

std::unordered_map<std::string, uint64_t> ngram_counts(const Tokens& tokens, size_t n) {
  std::unordered_map<std::string, uint64_t> counts;
  if (tokens.size() < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (size_t k = 0; k < n; ++k) {
      if (k) key += '\x01';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuStats sentence_stats(std::string_view hyp, std::string_view ref, const BleuConfig& config) {
  std::string h(hyp), r(ref);
  if (config.lowercase) {
    h = lowercase(h);
    r = lowercase(r);
  }
  Tokens ht = tokenize_13a(h);
  Tokens rt = tokenize_13a(r);
  BleuStats stats;
  stats.hyp_len = ht.size();
  stats.ref_len = rt.size();
  for (size_t n = 1; n <= 4; ++n) {
    auto hc = ngram_counts(ht, n);
    auto rc = ngram_counts(rt, n);
    uint64_t total = 0, matched = 0;
    for (const auto& [gram, count] : hc) {
      total += count;
      auto it = rc.find(gram);
      if (it != rc.end()) matched += std::min(count, it->second);
    }
    stats.hyp_ngrams[n - 1] = total;
    stats.clipped_matches[n - 1] = matched;
  }
  return stats;
}

BleuScore corpus_bleu(const BleuStats& stats) {
  if (stats.hyp_len == 0) throw Error("corpus_bleu: empty hypothesis corpus");
  BleuScore score;
  score.hyp_len = stats.hyp_len;
  score.ref_len = stats.ref_len;
  score.brevity_penalty =
      stats.hyp_len >= stats.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));
  double log_sum = 0.0;
  bool zero = false;
  for (size_t n = 0; n < 4; ++n) {
    double p = stats.hyp_ngrams[n] == 0
                   ? 0.0
                   : static_cast<double>(stats.clipped_matches[n]) /
                         static_cast<double>(stats.hyp_ngrams[n]);
    score.precisions[n] = 100.0 * p;
    if (p <= 0.0)
      zero = true;
    else
      log_sum += std::log(p);
  }
  score.bleu = zero ? 0.0 : score.brevity_penalty * std::exp(log_sum / 4.0) * 100.0;
  return score;
}

BleuScore corpus_bleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs,
                      const BleuConfig& config) {
  if (hyps.size() != refs.size())
    throw Error("corpus_bleu: hypothesis/reference line counts differ (" +
                std::to_string(hyps.size()) + " vs " + std::to_string(refs.size()) + ")");
  BleuStats total;
  for (size_t i = 0; i < hyps.size(); ++i) total += sentence_stats(hyps[i], refs[i], config);
  return corpus_bleu(total);
}

}  // namespace stif::bleu
