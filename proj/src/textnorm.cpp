#include "stif/textnorm.hpp"

#include <algorithm>
#include <cctype>

namespace stif::textnorm {

namespace {

bool is_detach_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case '?':
    case '!':
    case ';':
    case ':':
    case '(':
    case ')':
    case '"':
    case '\'':
      return true;
    default:
      return false;
  }
}

size_t digit_run(std::string_view s, size_t p) {
  size_t q = p;
  while (q < s.size() && is_ascii_digit(s[q])) ++q;
  return q - p;
}

// \d+([.,]\d+)* ; returns match length at p, 0 if none.
size_t match_number_at(std::string_view s, size_t p) {
  size_t d = digit_run(s, p);
  if (d == 0) return 0;
  size_t q = p + d;
  while (q + 1 < s.size() && (s[q] == '.' || s[q] == ',')) {
    size_t d2 = digit_run(s, q + 1);
    if (d2 == 0) break;
    q += 1 + d2;
  }
  return q - p;
}

// \d{1,2}[/-]\d{1,2}[/-]\d{2,4}
size_t match_date_at(std::string_view s, size_t p) {
  size_t q = p;
  size_t d1 = digit_run(s, q);
  if (d1 < 1 || d1 > 2) return 0;
  q += d1;
  if (q >= s.size() || (s[q] != '/' && s[q] != '-')) return 0;
  ++q;
  size_t d2 = digit_run(s, q);
  if (d2 < 1 || d2 > 2) return 0;
  q += d2;
  if (q >= s.size() || (s[q] != '/' && s[q] != '-')) return 0;
  ++q;
  size_t d3 = digit_run(s, q);
  if (d3 < 2 || d3 > 4) return 0;
  return q + d3 - p;
}

// number shape followed by '%'
size_t match_percent_at(std::string_view s, size_t p) {
  size_t n = match_number_at(s, p);
  if (n == 0) return 0;
  size_t q = p + n;
  if (q < s.size() && s[q] == '%') return n + 1;
  return 0;
}

// @[A-Za-z0-9_]+
size_t match_handle_at(std::string_view s, size_t p) {
  if (s[p] != '@') return 0;
  size_t q = p + 1;
  while (q < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_'))
    ++q;
  return q - p > 1 ? q - p : 0;
}

size_t match_mask_at(std::string_view s, size_t p) {
  for (std::string_view m : {kMaskDate, kMaskPercent, kMaskAccount, kMaskNum}) {
    if (s.substr(p, m.size()) == m) return m.size();
  }
  return 0;
}

// A protected match only counts when it ends at the chunk end or at a
// detachable punctuation character; otherwise the scanner falls back to a
// plain character run ("100abc" stays one token).
size_t match_protected_at(std::string_view s, size_t p) {
  for (size_t len : {match_mask_at(s, p), match_date_at(s, p), match_percent_at(s, p),
                     match_handle_at(s, p), match_number_at(s, p)}) {
    if (len == 0) continue;
    size_t q = p + len;
    if (q == s.size() || is_detach_punct(s[q])) return len;
  }
  return 0;
}

void tokenize_chunk(std::string_view chunk, Tokens& out) {
  size_t p = 0;
  while (p < chunk.size()) {
    if (size_t len = match_protected_at(chunk, p); len > 0) {
      out.emplace_back(chunk.substr(p, len));
      p += len;
    } else if (is_detach_punct(chunk[p])) {
      out.emplace_back(1, chunk[p]);
      ++p;
    } else {
      size_t q = p;
      while (q < chunk.size() && !is_detach_punct(chunk[q])) ++q;
      out.emplace_back(chunk.substr(p, q - p));
      p = q;
    }
  }
}

}  // namespace

std::string squeeze_repeats(std::string_view text) {
  std::vector<char32_t> cps = utf8_decode(text);
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < cps.size()) {
    size_t j = i;
    while (j < cps.size() && cps[j] == cps[i]) ++j;
    size_t keep = std::min<size_t>(j - i, 2);
    for (size_t k = 0; k < keep; ++k) utf8_encode(cps[i], out);
    i = j;
  }
  return out;
}

Tokens tokenize(std::string_view text) {
  Tokens out;
  for (const std::string& chunk : split_whitespace(text)) tokenize_chunk(chunk, out);
  return out;
}

bool matches_date(std::string_view token) {
  return !token.empty() && match_date_at(token, 0) == token.size();
}

bool matches_percent(std::string_view token) {
  return !token.empty() && match_percent_at(token, 0) == token.size();
}

bool matches_account(std::string_view token) { return token.size() > 1 && token[0] == '@'; }

bool matches_number(std::string_view token) {
  return !token.empty() && match_number_at(token, 0) == token.size();
}

Tokens mask_entities(Tokens tokens, const MaskKinds& kinds) {
  for (std::string& t : tokens) {
    if (kinds.date && matches_date(t)) {
      t = kMaskDate;
    } else if (kinds.percent && matches_percent(t)) {
      t = kMaskPercent;
    } else if (kinds.account && matches_account(t)) {
      t = kMaskAccount;
    } else if (kinds.number && matches_number(t)) {
      t = kMaskNum;
    }
  }
  return tokens;
}

Tokens normalize(std::string_view text, const NormalizationConfig& config) {
  std::string buf;
  std::string_view current = text;
  if (config.lowercase) {
    buf = lowercase(current);
    current = buf;
  }
  if (config.squeeze_repeats) {
    buf = squeeze_repeats(current);
    current = buf;
  }
  Tokens tokens = tokenize(current);
  if (config.mask.any()) tokens = mask_entities(std::move(tokens), config.mask);
  return tokens;
}

std::string detokenize(const Tokens& tokens) { return join(tokens, " "); }

bool is_mask_token(std::string_view token) {
  return token == kMaskNum || token == kMaskAccount || token == kMaskDate ||
         token == kMaskPercent;
}

bool is_punct_token(std::string_view token) {
  return token.size() == 1 && is_detach_punct(token[0]);
}

}  // namespace stif::textnorm
