#ifndef STIF_LEXICON_HPP
#define STIF_LEXICON_HPP

#include <filesystem>
#include <string>
#include <unordered_map>

#include "stif/strutil.hpp"

namespace stif::lexicon {

// Word-level informal -> formal dictionary. Keys are lowercase whole tokens;
// values may be multi-word (which relaxes the length-preservation property,
// reported via `multiword`).
struct InformalDictionary {
  std::unordered_map<std::string, Tokens> entries;
  size_t loaded = 0;            // entries in the final table
  size_t dropped_identity = 0;  // key == value lines, skipped
  bool multiword = false;
  bool value_key_overlap = false;  // some value token is also a key

  size_t size() const { return entries.size(); }
};

// Accepts `informal<TAB>formal` or `informal,formal` per line; later
// duplicate keys override earlier ones.
InformalDictionary load_dictionary(const std::filesystem::path& path);

// Exact whole-token substitution; punctuation and mask tokens never match.
Tokens translate_word_level(const Tokens& tokens, const InformalDictionary& dict);

}  // namespace stif::lexicon

#endif  // STIF_LEXICON_HPP
