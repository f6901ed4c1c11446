#ifndef STIF_TEXTNORM_HPP
#define STIF_TEXTNORM_HPP

#include <string>
#include <string_view>

#include "stif/strutil.hpp"

namespace stif::textnorm {

// Reserved mask surfaces. These strings are part of the on-disk and
// phrase-table vocabulary and must stay byte-exact.
inline constexpr std::string_view kMaskNum = "<num>";
inline constexpr std::string_view kMaskAccount = "<account>";
inline constexpr std::string_view kMaskDate = "<date>";
inline constexpr std::string_view kMaskPercent = "<percent>";

struct MaskKinds {
  bool date = true;
  bool percent = true;
  bool account = true;
  bool number = true;

  static MaskKinds all() { return {}; }
  static MaskKinds none() { return {false, false, false, false}; }
  bool any() const { return date || percent || account || number; }
};

struct NormalizationConfig {
  bool lowercase = true;
  bool squeeze_repeats = true;
  MaskKinds mask = MaskKinds::all();
};

// Reduces every run of 3+ identical code points to exactly 2.
std::string squeeze_repeats(std::string_view text);

// Whitespace split, then standalone-token detachment of . , ? ! ; : ( ) " '
// Date / percent / account / number shapes and mask surfaces are kept whole.
Tokens tokenize(std::string_view text);

// Per-token replacement with mask surfaces. Priority: date, percent,
// account, number. Token count is preserved.
Tokens mask_entities(Tokens tokens, const MaskKinds& kinds = MaskKinds::all());

// lowercase -> squeeze_repeats -> tokenize -> mask_entities, per config.
Tokens normalize(std::string_view text, const NormalizationConfig& config = {});

std::string detokenize(const Tokens& tokens);

bool is_mask_token(std::string_view token);
bool is_punct_token(std::string_view token);

// Whole-token shape tests used by masking and tokenizer protection.
bool matches_date(std::string_view token);
bool matches_percent(std::string_view token);
bool matches_account(std::string_view token);
bool matches_number(std::string_view token);

}  // namespace stif::textnorm

#endif  // STIF_TEXTNORM_HPP
