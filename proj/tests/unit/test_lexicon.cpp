#include "stif/lexicon.hpp"

#include <doctest.h>

#include <filesystem>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"

using namespace stif;
using namespace stif::lexicon;

namespace {

InformalDictionary dict_from(const std::vector<std::string>& lines) {
  auto path = std::filesystem::temp_directory_path() / "stif_dict_test.tsv";
  write_lines(path, lines);
  InformalDictionary dict = load_dictionary(path);
  std::filesystem::remove(path);
  return dict;
}

}  // namespace

TEST_CASE("load_dictionary parses tab and comma formats") {
  InformalDictionary dict = dict_from({"yg\tyang", "ga,tidak"});
  CHECK(dict.size() == 2);
  CHECK(dict.entries.at("yg") == Tokens{"yang"});
  CHECK(dict.entries.at("ga") == Tokens{"tidak"});
  CHECK_FALSE(dict.multiword);
}

TEST_CASE("load_dictionary: duplicates, identity entries, errors") {
  InformalDictionary dict = dict_from({"gk\tgak", "gk\ttidak"});
  CHECK(dict.entries.at("gk") == Tokens{"tidak"});  // last wins

  dict = dict_from({"sama\tsama", "yg\tyang"});
  CHECK(dict.size() == 1);  // identity dropped
  CHECK(dict.dropped_identity == 1);

  dict = dict_from({"knp\tkenapa", "gpp\ttidak apa apa"});
  CHECK(dict.multiword);
  CHECK(dict.entries.at("gpp") == Tokens{"tidak", "apa", "apa"});

  auto path = std::filesystem::temp_directory_path() / "stif_dict_bad.tsv";
  write_lines(path, {"yg\tyang", "tanpa-pemisah"});
  CHECK_THROWS_WITH_AS(load_dictionary(path), doctest::Contains(":2:"), Error);
  std::filesystem::remove(path);

  CHECK(dict_from({}).size() == 0);
}

TEST_CASE("translate_word_level substitutes whole tokens only") {
  InformalDictionary dict = dict_from({"yg\tyang", "ga\ttidak"});
  CHECK(translate_word_level({"yg", "ga", "bisa"}, dict) == Tokens{"yang", "tidak", "bisa"});
  CHECK(translate_word_level({"saya", "bisa"}, dict) == Tokens{"saya", "bisa"});
  // the documented baseline weakness: formal homographs stay untouched
  CHECK(translate_word_level({"kaya", "gini"}, dict) == Tokens{"kaya", "gini"});
}

TEST_CASE("translate_word_level never touches punctuation or masks") {
  // adversarial dictionary with punctuation/mask keys
  InformalDictionary dict = dict_from({"?\ttanya", "<num>\tangka", "yg\tyang"});
  CHECK(translate_word_level({"yg", "?", "<num>"}, dict) == Tokens{"yang", "?", "<num>"});
}

TEST_CASE("single-word dictionaries preserve length; idempotence when disjoint") {
  InformalDictionary dict = dict_from({"yg\tyang", "ga\ttidak", "knp\tkenapa"});
  CHECK_FALSE(dict.value_key_overlap);
  Tokens input = {"knp", "yg", "ini", "ga", "jalan", "?"};
  Tokens once = translate_word_level(input, dict);
  CHECK(once.size() == input.size());
  CHECK(translate_word_level(once, dict) == once);

  InformalDictionary overlapping = dict_from({"a\tb", "b\tc"});
  CHECK(overlapping.value_key_overlap);
}
