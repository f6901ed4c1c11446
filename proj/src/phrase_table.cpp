#include "stif/phrase_table.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"

namespace stif::phrase {

std::vector<PhraseBox> extract_boxes(const align::AlignmentMatrix& alignment,
                                     size_t max_phrase_len) {
  std::vector<PhraseBox> boxes;
  uint32_t slen = alignment.source_len, tlen = alignment.target_len;
  if (slen == 0 || tlen == 0 || alignment.links.empty()) return boxes;

  std::vector<char> tgt_aligned(tlen, 0);
  for (const auto& [i, j] : alignment.links) tgt_aligned[j] = 1;

  for (uint32_t i1 = 0; i1 < slen; ++i1) {
    uint32_t i2_max = std::min<uint32_t>(slen - 1, i1 + static_cast<uint32_t>(max_phrase_len) - 1);
    for (uint32_t i2 = i1; i2 <= i2_max; ++i2) {
      // Project the source span onto the target side.
      uint32_t j1 = tlen, j2 = 0;
      bool any = false;
      for (const auto& [i, j] : alignment.links) {
        if (i < i1 || i > i2) continue;
        any = true;
        j1 = std::min(j1, j);
        j2 = std::max(j2, j);
      }
      if (!any) continue;
      // No link may leave the box through the target side.
      bool consistent = true;
      for (const auto& [i, j] : alignment.links) {
        if (j >= j1 && j <= j2 && (i < i1 || i > i2)) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      // Extend over unaligned target boundary words.
      for (int64_t js = j1; js >= 0 && (js == j1 || !tgt_aligned[js]); --js) {
        for (int64_t je = j2; je < tlen && (je == j2 || !tgt_aligned[je]); ++je) {
          if (static_cast<size_t>(je - js + 1) > max_phrase_len) continue;
          boxes.push_back({i1, i2, static_cast<uint32_t>(js), static_cast<uint32_t>(je)});
        }
      }
    }
  }
  std::sort(boxes.begin(), boxes.end());
  return boxes;
}

std::vector<PhrasePair> extract_phrases(const Tokens& source, const Tokens& target,
                                        const align::AlignmentMatrix& alignment,
                                        size_t max_phrase_len) {
  if (alignment.source_len != source.size() || alignment.target_len != target.size())
    throw Error("extract_phrases: alignment does not match the sentence pair");
  std::vector<PhrasePair> out;
  for (const PhraseBox& box : extract_boxes(alignment, max_phrase_len)) {
    PhrasePair pp;
    pp.source.assign(source.begin() + box.i1, source.begin() + box.i2 + 1);
    pp.target.assign(target.begin() + box.j1, target.begin() + box.j2 + 1);
    for (const auto& [i, j] : alignment.links) {
      if (i >= box.i1 && i <= box.i2 && j >= box.j1 && j <= box.j2)
        pp.alignment.emplace_back(static_cast<uint8_t>(i - box.i1),
                                  static_cast<uint8_t>(j - box.j1));
    }
    out.push_back(std::move(pp));
  }
  return out;
}

namespace {

constexpr char kKeySep = '\x01';

std::string serialize_alignment(const std::vector<std::pair<uint8_t, uint8_t>>& a) {
  std::string s;
  for (const auto& [i, j] : a) {
    s += std::to_string(i);
    s += '-';
    s += std::to_string(j);
    s += ' ';
  }
  return s;
}

std::vector<std::pair<uint8_t, uint8_t>> parse_alignment(const std::string& s) {
  std::vector<std::pair<uint8_t, uint8_t>> a;
  for (const std::string& tok : split_whitespace(s)) {
    size_t dash = tok.find('-');
    a.emplace_back(static_cast<uint8_t>(std::stoul(tok.substr(0, dash))),
                   static_cast<uint8_t>(std::stoul(tok.substr(dash + 1))));
  }
  return a;
}

double lexical_weight(const Tokens& predicted, const Tokens& given,
                      const std::vector<std::pair<uint8_t, uint8_t>>& links_pred_to_given,
                      const align::TranslationTable& lex) {
  // Product over predicted words of the average t(word | linked given words),
  // NULL when a word is unaligned.
  double product = 1.0;
  for (size_t p = 0; p < predicted.size(); ++p) {
    double sum = 0.0;
    size_t n = 0;
    for (const auto& [pp, gg] : links_pred_to_given) {
      if (pp != p) continue;
      sum += lex.prob(given[gg], predicted[p]);
      ++n;
    }
    product *= n == 0 ? lex.prob_null(predicted[p]) : sum / static_cast<double>(n);
  }
  return product;
}

}  // namespace

const std::vector<ScoredOption>* PhraseTable::find(const Tokens& source) const {
  return find_joined(join(source));
}

const std::vector<ScoredOption>* PhraseTable::find_joined(const std::string& source) const {
  auto it = options_.find(source);
  return it == options_.end() ? nullptr : &it->second;
}

void PhraseTable::add(const std::string& source, ScoredOption option) {
  options_[source].push_back(std::move(option));
}

void PhraseTable::finalize(size_t top_k) {
  for (auto& [src, opts] : options_) {
    std::sort(opts.begin(), opts.end(), [](const ScoredOption& a, const ScoredOption& b) {
      if (a.phi_forward != b.phi_forward) return a.phi_forward > b.phi_forward;
      return a.target < b.target;
    });
    if (opts.size() > top_k) opts.resize(top_k);
  }
}

size_t PhraseTable::option_count() const {
  size_t n = 0;
  for (const auto& [src, opts] : options_) n += opts.size();
  return n;
}

void PhraseTable::save(const std::filesystem::path& path) const {
  std::vector<std::string> sources;
  sources.reserve(options_.size());
  for (const auto& [src, opts] : options_) sources.push_back(src);
  std::sort(sources.begin(), sources.end());
  std::string out;
  for (const std::string& src : sources) {
    for (const ScoredOption& opt : *find_joined(src)) {
      out += src;
      out += " ||| ";
      out += join(opt.target);
      out += " ||| ";
      out += format_sig6(opt.phi_forward);
      out += ' ';
      out += format_sig6(opt.phi_reverse);
      out += ' ';
      out += format_sig6(opt.lex_forward);
      out += ' ';
      out += format_sig6(opt.lex_reverse);
      out += '\n';
    }
  }
  write_file(path, out);
}

PhraseTable PhraseTable::load(const std::filesystem::path& path) {
  PhraseTable table;
  size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    size_t a = line.find(" ||| ");
    size_t b = a == std::string::npos ? a : line.find(" ||| ", a + 5);
    if (b == std::string::npos)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected `src ||| tgt ||| scores`");
    std::string src = line.substr(0, a);
    std::string tgt = line.substr(a + 5, b - a - 5);
    Tokens scores = split_whitespace(line.substr(b + 5));
    if (scores.size() != 4)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected 4 scores");
    ScoredOption opt;
    opt.target = split_whitespace(tgt);
    opt.phi_forward = std::strtod(scores[0].c_str(), nullptr);
    opt.phi_reverse = std::strtod(scores[1].c_str(), nullptr);
    opt.lex_forward = std::strtod(scores[2].c_str(), nullptr);
    opt.lex_reverse = std::strtod(scores[3].c_str(), nullptr);
    table.add(src, std::move(opt));
  }
  return table;
}

PhraseTable score_table(const std::vector<PhrasePair>& all_pairs,
                        const align::TranslationTable& lex_forward,
                        const align::TranslationTable& lex_reverse, const ScoreConfig& config) {
  struct JointEntry {
    size_t count = 0;
    // Alignment votes; the most frequent one is used for lexical weights,
    // lexicographically smallest serialization on ties.
    std::map<std::string, size_t> alignments;
  };
  std::unordered_map<std::string, JointEntry> joint;
  std::unordered_map<std::string, size_t> src_count, tgt_count;
  std::vector<std::string> joint_order;  // first-seen order for determinism

  for (const PhrasePair& pp : all_pairs) {
    std::string src = join(pp.source);
    std::string tgt = join(pp.target);
    std::string key = src + kKeySep + tgt;
    auto [it, inserted] = joint.emplace(key, JointEntry{});
    if (inserted) joint_order.push_back(key);
    ++it->second.count;
    ++it->second.alignments[serialize_alignment(pp.alignment)];
    ++src_count[src];
    ++tgt_count[tgt];
  }

  PhraseTable table;
  for (const std::string& key : joint_order) {
    size_t sep = key.find(kKeySep);
    std::string src = key.substr(0, sep);
    std::string tgt = key.substr(sep + 1);
    const JointEntry& entry = joint.at(key);

    std::string best_alignment;
    size_t best_votes = 0;
    for (const auto& [a, votes] : entry.alignments) {
      if (votes > best_votes) {  // map order = lexicographic, so ties keep the smallest
        best_votes = votes;
        best_alignment = a;
      }
    }
    auto links = parse_alignment(best_alignment);
    std::vector<std::pair<uint8_t, uint8_t>> links_rev;
    for (const auto& [i, j] : links) links_rev.emplace_back(j, i);
    std::sort(links_rev.begin(), links_rev.end());

    Tokens src_tokens = split_whitespace(src);
    Tokens tgt_tokens = split_whitespace(tgt);

    ScoredOption opt;
    opt.target = tgt_tokens;
    opt.phi_forward = quantize_sig6(static_cast<double>(entry.count) / src_count.at(src));
    opt.phi_reverse = quantize_sig6(static_cast<double>(entry.count) / tgt_count.at(tgt));
    // Forward lexical weight predicts the target from the source.
    opt.lex_forward = quantize_sig6(lexical_weight(tgt_tokens, src_tokens, links_rev, lex_forward));
    opt.lex_reverse = quantize_sig6(lexical_weight(src_tokens, tgt_tokens, links, lex_reverse));
    table.add(src, std::move(opt));
  }
  table.finalize(config.top_k);
  return table;
}

}  // namespace stif::phrase
