#include "stif/align.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/parallel.hpp"

namespace stif::align {

uint32_t Vocab::intern(const std::string& word) {
  auto [it, inserted] = ids_.emplace(word, static_cast<uint32_t>(words_.size()));
  if (inserted) words_.push_back(word);
  return it->second;
}

std::optional<uint32_t> Vocab::find(const std::string& word) const {
  auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

double TranslationTable::prob(const std::string& source, const std::string& target) const {
  auto s = source_vocab.find(source);
  auto t = target_vocab.find(target);
  if (!s || !t) return floor;
  const auto& row = rows[*s];
  auto it = row.find(*t);
  return it == row.end() ? floor : it->second;
}

double TranslationTable::prob_null(const std::string& target) const {
  auto t = target_vocab.find(target);
  if (!t) return floor;
  const auto& row = rows[0];
  auto it = row.find(*t);
  return it == row.end() ? floor : it->second;
}

void TranslationTable::save(const std::filesystem::path& path) const {
  std::vector<std::string> lines;
  for (uint32_t s = 0; s < rows.size(); ++s) {
    std::vector<std::pair<uint32_t, double>> row(rows[s].begin(), rows[s].end());
    std::sort(row.begin(), row.end());
    for (const auto& [t, p] : row)
      lines.push_back(source_vocab.word(s) + " " + target_vocab.word(t) + " " + format_sig6(p));
  }
  std::sort(lines.begin(), lines.end());
  write_lines(path, lines);
}

TranslationTable TranslationTable::load(const std::filesystem::path& path) {
  TranslationTable table;
  table.source_vocab.intern(kNullSurface);
  table.rows.emplace_back();
  size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    Tokens f = split_whitespace(line);
    if (f.size() != 3)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected `source target prob`");
    uint32_t s = table.source_vocab.intern(f[0]);
    uint32_t t = table.target_vocab.intern(f[1]);
    if (s >= table.rows.size()) table.rows.resize(s + 1);
    table.rows[s][t] = std::strtod(f[2].c_str(), nullptr);
  }
  return table;
}

bool AlignmentMatrix::has(uint32_t i, uint32_t j) const {
  return std::binary_search(links.begin(), links.end(), std::make_pair(i, j));
}

void AlignmentMatrix::add(uint32_t i, uint32_t j) {
  auto link = std::make_pair(i, j);
  auto it = std::lower_bound(links.begin(), links.end(), link);
  if (it == links.end() || *it != link) links.insert(it, link);
}

std::string AlignmentMatrix::to_pharaoh() const {
  std::string out;
  for (size_t k = 0; k < links.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(links[k].first) + "-" + std::to_string(links[k].second);
  }
  return out;
}

AlignmentMatrix AlignmentMatrix::from_pharaoh(std::string_view line, uint32_t source_len,
                                              uint32_t target_len) {
  AlignmentMatrix m;
  m.source_len = source_len;
  m.target_len = target_len;
  for (const std::string& tok : split_whitespace(line)) {
    size_t dash = tok.find('-');
    if (dash == std::string::npos) throw Error("bad pharaoh link: " + tok);
    uint32_t i = static_cast<uint32_t>(std::stoul(tok.substr(0, dash)));
    uint32_t j = static_cast<uint32_t>(std::stoul(tok.substr(dash + 1)));
    if (i >= source_len || j >= target_len) throw Error("pharaoh link out of range: " + tok);
    m.add(i, j);
  }
  return m;
}

AlignmentMatrix AlignmentMatrix::transposed() const {
  AlignmentMatrix t;
  t.source_len = target_len;
  t.target_len = source_len;
  t.links.reserve(links.size());
  for (const auto& [i, j] : links) t.links.emplace_back(j, i);
  std::sort(t.links.begin(), t.links.end());
  return t;
}

namespace {

struct IdPair {
  std::vector<uint32_t> source;  // without NULL; NULL is implicit id 0
  std::vector<uint32_t> target;
};

using CountMap = std::unordered_map<uint64_t, double>;

uint64_t pair_key(uint32_t s, uint32_t t) { return (static_cast<uint64_t>(s) << 32) | t; }

}  // namespace

TranslationTable train_ibm1(const std::vector<std::pair<Tokens, Tokens>>& corpus,
                            const Ibm1Config& config, size_t* skipped_out) {
  if (corpus.empty()) throw Error("train_ibm1: empty corpus");
  if (config.iterations < 1) throw Error("train_ibm1: iterations must be >= 1");

  TranslationTable table;
  table.floor = config.floor;
  table.source_vocab.intern(TranslationTable::kNullSurface);

  std::vector<IdPair> pairs;
  size_t skipped = 0;
  for (const auto& [src, tgt] : corpus) {
    if (src.empty() || tgt.empty()) {
      ++skipped;
      continue;
    }
    IdPair p;
    p.source.reserve(src.size());
    p.target.reserve(tgt.size());
    for (const auto& w : src) p.source.push_back(table.source_vocab.intern(w));
    for (const auto& w : tgt) p.target.push_back(table.target_vocab.intern(w));
    pairs.push_back(std::move(p));
  }
  if (skipped_out) *skipped_out = skipped;
  if (skipped > 0)
    std::fprintf(stderr, "train_ibm1: skipped %zu pair(s) with an empty side\n", skipped);
  if (pairs.empty()) throw Error("train_ibm1: no usable pairs");

  // Uniform initialization over co-occurring pairs; rows sum to 1 from the start.
  size_t source_count = table.source_vocab.size();
  std::vector<std::vector<uint32_t>> cooc(source_count);
  {
    std::vector<std::unordered_map<uint32_t, char>> seen(source_count);
    auto note = [&](uint32_t s, uint32_t t) {
      if (seen[s].emplace(t, 1).second) cooc[s].push_back(t);
    };
    for (const IdPair& p : pairs)
      for (uint32_t t : p.target) {
        note(0, t);
        for (uint32_t s : p.source) note(s, t);
      }
  }
  table.rows.assign(source_count, {});
  for (uint32_t s = 0; s < source_count; ++s) {
    if (cooc[s].empty()) continue;
    double uniform = 1.0 / static_cast<double>(cooc[s].size());
    for (uint32_t t : cooc[s]) table.rows[s][t] = uniform;
  }

  constexpr size_t kBlock = 64;
  size_t blocks = block_count(pairs.size(), kBlock);

  for (int iter = 0; iter < config.iterations; ++iter) {
    std::vector<CountMap> block_counts(blocks);
    std::vector<double> block_ll(blocks, 0.0);
    parallel_blocks(pairs.size(), kBlock, [&](size_t b, size_t e, size_t bi) {
      CountMap& counts = block_counts[bi];
      double ll = 0.0;
      for (size_t pi = b; pi < e; ++pi) {
        const IdPair& p = pairs[pi];
        double inv_len = 1.0 / static_cast<double>(p.source.size() + 1);
        for (uint32_t t : p.target) {
          double denom = table.rows[0].at(t);
          for (uint32_t s : p.source) denom += table.rows[s].at(t);
          ll += std::log(denom * inv_len);
          double inv_denom = 1.0 / denom;
          counts[pair_key(0, t)] += table.rows[0].at(t) * inv_denom;
          for (uint32_t s : p.source) counts[pair_key(s, t)] += table.rows[s].at(t) * inv_denom;
        }
      }
      block_ll[bi] = ll;
    });

    // Merge in block order, then normalize rows over key-sorted entries so the
    // result is bit-stable for any worker count.
    std::vector<CountMap> merged(source_count);
    for (size_t bi = 0; bi < blocks; ++bi)
      for (const auto& [key, c] : block_counts[bi])
        merged[static_cast<uint32_t>(key >> 32)][static_cast<uint32_t>(key)] += c;

    double ll = 0.0;
    for (size_t bi = 0; bi < blocks; ++bi) ll += block_ll[bi];
    table.log_likelihoods.push_back(ll);

    for (uint32_t s = 0; s < source_count; ++s) {
      std::vector<std::pair<uint32_t, double>> row(merged[s].begin(), merged[s].end());
      std::sort(row.begin(), row.end());
      double total = 0.0;
      for (const auto& [t, c] : row) total += c;
      table.rows[s].clear();
      if (total <= 0.0) continue;
      for (const auto& [t, c] : row) table.rows[s][t] = c / total;
    }
  }

  // Prune tiny entries, then renormalize so row sums stay at 1.
  for (auto& row : table.rows) {
    std::vector<std::pair<uint32_t, double>> kept;
    double total = 0.0;
    for (const auto& [t, p] : row) {
      if (p >= config.prune_threshold) {
        kept.emplace_back(t, p);
        total += p;
      }
    }
    std::sort(kept.begin(), kept.end());
    row.clear();
    if (total <= 0.0) continue;
    for (const auto& [t, p] : kept) row[t] = p / total;
  }
  return table;
}

AlignmentMatrix viterbi_align(const Tokens& source, const Tokens& target,
                              const TranslationTable& table) {
  AlignmentMatrix m;
  m.source_len = static_cast<uint32_t>(source.size());
  m.target_len = static_cast<uint32_t>(target.size());
  for (uint32_t j = 0; j < target.size(); ++j) {
    double best = table.prob_null(target[j]);
    int best_i = -1;  // NULL
    for (uint32_t i = 0; i < source.size(); ++i) {
      double p = table.prob(source[i], target[j]);
      if (p > best) {
        best = p;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i >= 0) m.add(static_cast<uint32_t>(best_i), j);
  }
  return m;
}

std::optional<SymHeuristic> heuristic_from_name(std::string_view name) {
  if (name == "intersection") return SymHeuristic::kIntersection;
  if (name == "union") return SymHeuristic::kUnion;
  if (name == "grow-diag-final-and") return SymHeuristic::kGrowDiagFinalAnd;
  return std::nullopt;
}

AlignmentMatrix symmetrize(const AlignmentMatrix& forward, const AlignmentMatrix& reverse,
                           SymHeuristic heuristic) {
  AlignmentMatrix rev = reverse.transposed();
  if (rev.source_len != forward.source_len || rev.target_len != forward.target_len)
    throw Error("symmetrize: dimension mismatch");

  AlignmentMatrix result;
  result.source_len = forward.source_len;
  result.target_len = forward.target_len;

  std::vector<std::pair<uint32_t, uint32_t>> inter, uni;
  std::set_intersection(forward.links.begin(), forward.links.end(), rev.links.begin(),
                        rev.links.end(), std::back_inserter(inter));
  std::set_union(forward.links.begin(), forward.links.end(), rev.links.begin(), rev.links.end(),
                 std::back_inserter(uni));

  if (heuristic == SymHeuristic::kIntersection) {
    result.links = std::move(inter);
    return result;
  }
  if (heuristic == SymHeuristic::kUnion) {
    result.links = std::move(uni);
    return result;
  }

  // grow-diag-final-and
  result.links = inter;
  std::vector<char> src_aligned(result.source_len, 0), tgt_aligned(result.target_len, 0);
  for (const auto& [i, j] : result.links) {
    src_aligned[i] = 1;
    tgt_aligned[j] = 1;
  }

  // grow-diag: scan matrix positions in order, additions take effect
  // immediately, repeat to fixpoint (the published procedure's order).
  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t i = 0; i < result.source_len; ++i) {
      for (uint32_t j = 0; j < result.target_len; ++j) {
        if (!result.has(i, j)) continue;
        for (const auto& d : kNeighbors) {
          int64_t ni = static_cast<int64_t>(i) + d[0];
          int64_t nj = static_cast<int64_t>(j) + d[1];
          if (ni < 0 || nj < 0 || ni >= static_cast<int64_t>(result.source_len) ||
              nj >= static_cast<int64_t>(result.target_len))
            continue;
          auto link = std::make_pair(static_cast<uint32_t>(ni), static_cast<uint32_t>(nj));
          if (result.has(link.first, link.second)) continue;
          if (!std::binary_search(uni.begin(), uni.end(), link)) continue;
          if (src_aligned[link.first] && tgt_aligned[link.second]) continue;
          result.add(link.first, link.second);
          src_aligned[link.first] = 1;
          tgt_aligned[link.second] = 1;
          changed = true;
        }
      }
    }
  }
  // final-and over forward then reverse links: both endpoints must be unaligned.
  const auto& fwd_links = forward.links;
  const auto& rev_links = rev.links;
  for (const auto* side : {&fwd_links, &rev_links}) {
    for (const auto& [i, j] : *side) {
      if (src_aligned[i] || tgt_aligned[j]) continue;
      result.add(i, j);
      src_aligned[i] = 1;
      tgt_aligned[j] = 1;
    }
  }
  return result;
}

}  // namespace stif::align
