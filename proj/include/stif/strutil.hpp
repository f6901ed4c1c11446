#ifndef STIF_STRUTIL_HPP
#define STIF_STRUTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stif {

using Tokens = std::vector<std::string>;

std::vector<std::string> split_whitespace(std::string_view text);
std::vector<std::string> split_on(std::string_view text, char sep);
std::string join(const Tokens& tokens, std::string_view sep = " ");
std::string trim(std::string_view text);

// ASCII plus Latin-1 supplement lowercasing; other code points pass through.
std::string lowercase(std::string_view text);

bool is_ascii_digit(char c);

// Minimal UTF-8 codec. Invalid bytes decode to U+FFFD one byte at a time so
// round-tripping never throws on dirty tweet data.
std::vector<char32_t> utf8_decode(std::string_view text);
void utf8_encode(char32_t cp, std::string& out);

// Canonical float formatting used by every on-disk format that must
// round-trip byte-identically. `sig6` is "%.6g", `fixed6` is "%.6f".
std::string format_sig6(double v);
std::string format_fixed6(double v);
// Snaps a value to what it will look like after a save/load cycle.
double quantize_sig6(double v);
double quantize_fixed6(double v);

}  // namespace stif

#endif  // STIF_STRUTIL_HPP
