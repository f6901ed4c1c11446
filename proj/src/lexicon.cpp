#include "stif/lexicon.hpp"

#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/textnorm.hpp"

namespace stif::lexicon {

InformalDictionary load_dictionary(const std::filesystem::path& path) {
  InformalDictionary dict;
  size_t line_no = 0;
  for (const std::string& raw : read_lines(path)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    size_t sep = line.find('\t');
    if (sep == std::string::npos) sep = line.find(',');
    if (sep == std::string::npos)
      throw Error(path.string() + ":" + std::to_string(line_no) +
                  ": expected informal<TAB>formal or informal,formal");
    std::string key = lowercase(trim(line.substr(0, sep)));
    std::string value = trim(line.substr(sep + 1));
    if (key.empty() || value.empty())
      throw Error(path.string() + ":" + std::to_string(line_no) + ": empty field");
    if (key == lowercase(value)) {
      ++dict.dropped_identity;
      continue;
    }
    Tokens value_tokens = split_whitespace(value);
    if (value_tokens.size() > 1) dict.multiword = true;
    dict.entries[key] = std::move(value_tokens);
  }
  dict.loaded = dict.entries.size();
  for (const auto& [key, value] : dict.entries) {
    for (const std::string& v : value) {
      if (dict.entries.count(v)) {
        dict.value_key_overlap = true;
        break;
      }
    }
    if (dict.value_key_overlap) break;
  }
  return dict;
}

Tokens translate_word_level(const Tokens& tokens, const InformalDictionary& dict) {
  Tokens out;
  out.reserve(tokens.size());
  for (const std::string& t : tokens) {
    if (textnorm::is_punct_token(t) || textnorm::is_mask_token(t)) {
      out.push_back(t);
      continue;
    }
    auto it = dict.entries.find(t);
    if (it == dict.entries.end()) {
      out.push_back(t);
    } else {
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  return out;
}

}  // namespace stif::lexicon
