#include "stif/corpus.hpp"

#include <algorithm>
#include <unordered_map>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/rng.hpp"
#include "stif/textnorm.hpp"

namespace stif::corpus {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

std::optional<Split> split_from_name(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

std::vector<const SentencePair*> ParallelCorpus::split(Split s) const {
  std::vector<const SentencePair*> out;
  for (const auto& p : pairs)
    if (p.split == s) out.push_back(&p);
  return out;
}

size_t ParallelCorpus::split_size(Split s) const {
  size_t n = 0;
  for (const auto& p : pairs)
    if (p.split == s) ++n;
  return n;
}

namespace {

// Hashtag chunks removed, remaining whitespace collapsed to single spaces.
std::string strip_hashtags(std::string_view text) {
  Tokens kept;
  for (const std::string& chunk : split_whitespace(text)) {
    if (chunk.size() > 1 && chunk[0] == '#') continue;
    kept.push_back(chunk);
  }
  return join(kept);
}

}  // namespace

MonolingualCorpus filter_corpus(const std::vector<RawDocument>& docs, const FilterConfig& config,
                                const std::unordered_set<std::string>& english_vocab,
                                FilterSummary* summary) {
  if (config.min_tokens < 1 || config.max_tokens < config.min_tokens)
    throw Error("filter_corpus: invalid token window");
  if (config.english_ratio_threshold <= 0.0 || config.english_ratio_threshold > 1.0)
    throw Error("filter_corpus: english ratio threshold must be in (0, 1]");

  FilterSummary local;
  local.input = docs.size();
  MonolingualCorpus out;
  std::unordered_set<std::string> seen;
  for (const RawDocument& doc : docs) {
    std::string text = strip_hashtags(trim(doc.text));
    if (text.empty()) {
      ++local.dropped_empty;
      continue;
    }
    Tokens tokens = textnorm::tokenize(text);
    if (tokens.size() < config.min_tokens || tokens.size() > config.max_tokens) {
      ++local.dropped_length;
      continue;
    }
    if (!english_vocab.empty()) {
      size_t english = 0;
      for (const std::string& t : tokens)
        if (english_vocab.count(lowercase(t))) ++english;
      double ratio = static_cast<double>(english) / static_cast<double>(tokens.size());
      if (ratio >= config.english_ratio_threshold) {
        ++local.dropped_english;
        continue;
      }
    }
    if (!seen.insert(text).second) {
      ++local.dropped_duplicate;
      continue;
    }
    out.sentences.push_back(std::move(text));
  }
  local.kept = out.sentences.size();
  if (summary) *summary = local;
  return out;
}

ParallelCorpus split_corpus(const std::vector<std::pair<std::string, std::string>>& pairs,
                            std::array<size_t, 3> sizes, uint64_t seed) {
  size_t total = sizes[0] + sizes[1] + sizes[2];
  if (total != pairs.size())
    throw Error("split_corpus: sizes sum to " + std::to_string(total) + " but corpus has " +
                std::to_string(pairs.size()) + " pairs");
  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);

  std::vector<Split> labels(pairs.size(), Split::kTrain);
  size_t at = 0;
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
    size_t n = sizes[static_cast<size_t>(s)];
    for (size_t k = 0; k < n; ++k) labels[order[at++]] = s;
  }

  ParallelCorpus corpus;
  corpus.pairs.reserve(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].first.empty() || pairs[i].second.empty())
      throw Error("split_corpus: pair " + std::to_string(i) + " has an empty side");
    corpus.pairs.push_back({pairs[i].first, pairs[i].second, labels[i]});
  }
  return corpus;
}

CorpusStats compute_stats(const std::vector<Tokens>& sentences) {
  CorpusStats stats;
  std::unordered_set<std::string> unique;
  for (const Tokens& sent : sentences) {
    stats.n_tokens += sent.size();
    for (const std::string& t : sent) {
      unique.insert(t);
      if (textnorm::is_punct_token(t)) ++stats.punct_counts[t];
    }
    if (sent.empty() || sent.back() != ".") ++stats.n_missing_final_period;
  }
  stats.n_unique_tokens = unique.size();
  return stats;
}

std::vector<std::string> export_stif_pairs(const ParallelCorpus& corpus, Split split) {
  std::vector<std::string> lines;
  for (const auto& p : corpus.pairs) {
    if (p.split != split) continue;
    if (p.informal.find(kStifTag) != std::string::npos ||
        p.formal.find(kStifTag) != std::string::npos)
      throw Error("export_stif_pairs: pair contains the reserved tag " + std::string(kStifTag));
    std::string line = p.informal;
    line += " ";
    line += kStifTag;
    line += " ";
    line += p.formal;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::pair<std::string, std::string> parse_stif_line(std::string_view line) {
  std::string sep = " ";
  sep += kStifTag;
  sep += " ";
  size_t pos = line.find(sep);
  if (pos == std::string_view::npos)
    throw Error("parse_stif_line: separator not found: " + std::string(line));
  return {std::string(line.substr(0, pos)), std::string(line.substr(pos + sep.size()))};
}

std::vector<std::pair<std::string, std::string>> load_pairs_two_files(
    const std::filesystem::path& informal_path, const std::filesystem::path& formal_path) {
  std::vector<std::string> inf = read_lines(informal_path);
  std::vector<std::string> form = read_lines(formal_path);
  if (inf.size() != form.size())
    throw Error("line count mismatch: " + informal_path.string() + " has " +
                std::to_string(inf.size()) + " lines, " + formal_path.string() + " has " +
                std::to_string(form.size()));
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(inf.size());
  for (size_t i = 0; i < inf.size(); ++i) pairs.emplace_back(std::move(inf[i]), std::move(form[i]));
  return pairs;
}

std::vector<std::pair<std::string, std::string>> load_pairs_tsv(const std::filesystem::path& path) {
  std::vector<std::pair<std::string, std::string>> pairs;
  size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected informal<TAB>formal");
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return pairs;
}

void save_pairs_tsv(const std::filesystem::path& path,
                    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> lines;
  lines.reserve(pairs.size());
  for (const auto& [a, b] : pairs) lines.push_back(a + "\t" + b);
  write_lines(path, lines);
}

std::vector<std::pair<std::string, std::string>> load_pairs_auto(
    const std::filesystem::path& stem) {
  std::filesystem::path tsv = stem;
  tsv += ".tsv";
  if (std::filesystem::exists(tsv)) return load_pairs_tsv(tsv);
  std::filesystem::path inf = stem, form = stem;
  inf += ".inf";
  form += ".for";
  if (std::filesystem::exists(inf) && std::filesystem::exists(form))
    return load_pairs_two_files(inf, form);
  throw Error("no corpus found at " + stem.string() + " (.tsv or .inf/.for)");
}

MonolingualCorpus load_mono(const std::filesystem::path& path) {
  MonolingualCorpus mono;
  for (std::string& line : read_lines(path)) {
    std::string t = trim(line);
    if (!t.empty()) mono.sentences.push_back(std::move(t));
  }
  return mono;
}

void save_split_manifest(const std::filesystem::path& path, const ParallelCorpus& corpus) {
  std::vector<std::string> lines;
  lines.reserve(corpus.pairs.size());
  for (size_t i = 0; i < corpus.pairs.size(); ++i)
    lines.push_back(std::to_string(i) + "\t" + std::string(split_name(corpus.pairs[i].split)));
  write_lines(path, lines);
}

ParallelCorpus apply_split_manifest(const std::vector<std::pair<std::string, std::string>>& pairs,
                                    const std::filesystem::path& manifest_path) {
  ParallelCorpus corpus;
  corpus.pairs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) corpus.pairs.push_back({a, b, Split::kTrain});
  size_t line_no = 0, assigned = 0;
  for (const std::string& line : read_lines(manifest_path)) {
    ++line_no;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(manifest_path.string() + ":" + std::to_string(line_no) +
                  ": expected index<TAB>split");
    size_t idx = std::stoull(line.substr(0, tab));
    auto split = split_from_name(line.substr(tab + 1));
    if (idx >= corpus.pairs.size() || !split)
      throw Error(manifest_path.string() + ":" + std::to_string(line_no) + ": bad entry: " + line);
    corpus.pairs[idx].split = *split;
    ++assigned;
  }
  if (assigned != corpus.pairs.size())
    throw Error("split manifest covers " + std::to_string(assigned) + " of " +
                std::to_string(corpus.pairs.size()) + " pairs");
  return corpus;
}

ParallelCorpus load_split_dir(const std::filesystem::path& dir) {
  ParallelCorpus corpus;
  for (Split s : {Split::kTrain, Split::kDev, Split::kTest}) {
    auto pairs = load_pairs_auto(dir / std::string(split_name(s)));
    for (auto& [a, b] : pairs) corpus.pairs.push_back({std::move(a), std::move(b), s});
  }
  return corpus;
}

std::unordered_set<std::string> load_wordlist(const std::filesystem::path& path) {
  std::unordered_set<std::string> words;
  for (const std::string& line : read_lines(path)) {
    std::string w = trim(line);
    if (w.empty() || w[0] == '#') continue;
    words.insert(lowercase(w));
  }
  return words;
}

std::string format_stats_table(const CorpusStats& stats) {
  std::string out;
  out += "tokens             " + std::to_string(stats.n_tokens) + "\n";
  out += "unique tokens      " + std::to_string(stats.n_unique_tokens) + "\n";
  out += "no final period    " + std::to_string(stats.n_missing_final_period) + "\n";
  for (const auto& [sym, count] : stats.punct_counts)
    out += "punct " + sym + "            " + std::to_string(count) + "\n";
  return out;
}

std::string format_stats_kv(const CorpusStats& stats) {
  KvFile kv;
  kv.set_int("tokens", static_cast<long long>(stats.n_tokens));
  kv.set_int("unique_tokens", static_cast<long long>(stats.n_unique_tokens));
  kv.set_int("missing_final_period", static_cast<long long>(stats.n_missing_final_period));
  for (const auto& [sym, count] : stats.punct_counts)
    kv.set_int("punct." + sym, static_cast<long long>(count));
  return kv.dump();
}

}  // namespace stif::corpus
