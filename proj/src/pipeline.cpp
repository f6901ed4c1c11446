#include "stif/pipeline.hpp"

#include <chrono>

#include "stif/bleu.hpp"
#include "stif/error.hpp"
#include "stif/parallel.hpp"
#include "stif/rng.hpp"

namespace stif::pipeline {

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(std::string(name) + ": " + e.what());
  }
}

}  // namespace

Tokens preprocess_informal(const std::string& text, const SystemConfig& config) {
  return textnorm::normalize(text, config.norm);
}

Tokens preprocess_formal(const std::string& text, const SystemConfig& config) {
  textnorm::NormalizationConfig formal_norm = config.norm;
  formal_norm.squeeze_repeats = false;
  return textnorm::normalize(text, formal_norm);
}

std::string reference_for_eval(const std::string& formal_text, const SystemConfig& config) {
  // Keep case (BLEU handles casing); apply the same masking as the inputs.
  return textnorm::detokenize(
      textnorm::mask_entities(textnorm::tokenize(formal_text), config.norm.mask));
}

void TrainedSystem::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  table.save(dir / "phrase-table.txt");
  lm.save_arpa(dir / "lm.arpa");
  weights.save(dir / "weights.txt");
  provenance.save(dir / "provenance.kv");
}

TrainedSystem TrainedSystem::load(const std::filesystem::path& dir) {
  TrainedSystem system;
  system.table = phrase::PhraseTable::load(dir / "phrase-table.txt");
  system.lm = lm::NGramLanguageModel::load_arpa(dir / "lm.arpa");
  system.weights = decoder::DecodingWeights::load(dir / "weights.txt");
  if (std::filesystem::exists(dir / "provenance.kv"))
    system.provenance = KvFile::load(dir / "provenance.kv");
  return system;
}

TrainedSystem train_system(const corpus::ParallelCorpus& parallel,
                           const std::vector<std::pair<std::string, std::string>>* synthetic,
                           const SystemConfig& config) {
  auto train_pairs = parallel.split(corpus::Split::kTrain);
  if (train_pairs.empty()) throw Error("train_system: empty train split");

  // Tokenized training corpus: real pairs first, synthetic appended.
  std::vector<std::pair<Tokens, Tokens>> tokenized = stage("normalize", [&] {
    std::vector<std::pair<Tokens, Tokens>> out;
    out.reserve(train_pairs.size() + (synthetic ? synthetic->size() : 0));
    for (const auto* p : train_pairs)
      out.emplace_back(preprocess_informal(p->informal, config),
                       preprocess_formal(p->formal, config));
    if (synthetic)
      for (const auto& [inf, form] : *synthetic)
        out.emplace_back(preprocess_informal(inf, config), preprocess_formal(form, config));
    return out;
  });

  align::TranslationTable fwd = stage("align-forward", [&] {
    return align::train_ibm1(tokenized, config.ibm1);
  });
  align::TranslationTable rev = stage("align-reverse", [&] {
    std::vector<std::pair<Tokens, Tokens>> flipped;
    flipped.reserve(tokenized.size());
    for (const auto& [src, tgt] : tokenized) flipped.emplace_back(tgt, src);
    return align::train_ibm1(flipped, config.ibm1);
  });

  std::vector<phrase::PhrasePair> extracted = stage("extract", [&] {
    using PairVec = std::vector<phrase::PhrasePair>;
    std::vector<PairVec> per_sentence =
        parallel_map<PairVec>(tokenized.size(), [&](size_t i) -> PairVec {
          const auto& [src, tgt] = tokenized[i];
          if (src.empty() || tgt.empty()) return {};
          align::AlignmentMatrix f = align::viterbi_align(src, tgt, fwd);
          align::AlignmentMatrix r = align::viterbi_align(tgt, src, rev);
          align::AlignmentMatrix sym =
              align::symmetrize(f, r, align::SymHeuristic::kGrowDiagFinalAnd);
          return phrase::extract_phrases(src, tgt, sym, config.max_phrase_len);
        });
    PairVec all;
    for (auto& v : per_sentence) all.insert(all.end(), std::make_move_iterator(v.begin()),
                                            std::make_move_iterator(v.end()));
    return all;
  });

  TrainedSystem system;
  system.table = stage("score", [&] {
    return phrase::score_table(extracted, fwd, rev, {config.phrase_top_k});
  });

  system.lm = stage("lm", [&] {
    std::vector<Tokens> formal_sentences;
    for (const auto* p : train_pairs) formal_sentences.push_back(preprocess_formal(p->formal, config));
    if (synthetic && config.lm_include_synthetic)
      for (const auto& [inf, form] : *synthetic)
        formal_sentences.push_back(preprocess_formal(form, config));
    return lm::train_lm(formal_sentences, config.lm);
  });

  system.weights = config.weights;
  if (config.tune_trials > 0) {
    system.weights = stage("tune", [&] {
      std::vector<std::pair<Tokens, std::string>> dev;
      for (const auto* p : parallel.split(corpus::Split::kDev))
        dev.emplace_back(preprocess_informal(p->informal, config),
                         reference_for_eval(p->formal, config));
      if (dev.empty()) return config.weights;
      return decoder::tune_weights(dev, system.table, system.lm, config.weights, config.dec,
                                   config.tune_trials, config.seed);
    });
  }

  system.provenance.set_int("train_pairs", static_cast<long long>(train_pairs.size()));
  system.provenance.set_int("synthetic_pairs",
                            static_cast<long long>(synthetic ? synthetic->size() : 0));
  system.provenance.set_int("seed", static_cast<long long>(config.seed));
  system.provenance.set_int("lm_order", config.lm.order);
  system.provenance.set_int("em_iterations", config.ibm1.iterations);
  return system;
}

std::vector<std::string> translate_corpus(const TrainedSystem& system,
                                          const std::vector<std::string>& informal_lines,
                                          const SystemConfig& config) {
  return parallel_map<std::string>(informal_lines.size(), [&](size_t i) {
    Tokens tokens = preprocess_informal(informal_lines[i], config);
    return textnorm::detokenize(
        decoder::decode(tokens, system.table, system.lm, system.weights, config.dec));
  });
}

double evaluate_split(const TrainedSystem& system, const corpus::ParallelCorpus& corpus,
                      corpus::Split split, const SystemConfig& config) {
  auto pairs = corpus.split(split);
  std::vector<std::string> inputs, refs;
  for (const auto* p : pairs) {
    inputs.push_back(p->informal);
    refs.push_back(reference_for_eval(p->formal, config));
  }
  std::vector<std::string> hyps = translate_corpus(system, inputs, config);
  return bleu::corpus_bleu(hyps, refs).bleu;
}

std::vector<std::pair<std::string, std::string>> forward_translate(
    const TrainedSystem& system, const corpus::MonolingualCorpus& mono, size_t sample_size,
    uint64_t seed, const SystemConfig& config) {
  if (sample_size > mono.sentences.size())
    throw Error("forward_translate: sample size " + std::to_string(sample_size) +
                " exceeds pool of " + std::to_string(mono.sentences.size()));
  Rng rng(seed);
  std::vector<size_t> picks = rng.sample_without_replacement(mono.sentences.size(), sample_size);
  std::vector<std::string> inputs;
  inputs.reserve(picks.size());
  for (size_t idx : picks) inputs.push_back(mono.sentences[idx]);
  std::vector<std::string> outputs = translate_corpus(system, inputs, config);
  std::vector<std::pair<std::string, std::string>> synthetic;
  synthetic.reserve(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (outputs[i].empty()) continue;
    synthetic.emplace_back(inputs[i], outputs[i]);
  }
  return synthetic;
}

std::vector<IterationReport> iterate(const corpus::ParallelCorpus& parallel,
                                     const corpus::MonolingualCorpus& mono,
                                     const IterateOptions& options, const SystemConfig& config) {
  if (options.iterations < 1) throw Error("iterate: iterations must be >= 1");
  std::filesystem::create_directories(options.run_dir);

  KvFile manifest;
  manifest.set_int("iterations", options.iterations);
  manifest.set_int("sample_size", static_cast<long long>(options.sample_size));
  manifest.set_bool("fixed_sample", options.fixed_sample);
  manifest.set_int("seed", static_cast<long long>(config.seed));
  manifest.save(options.run_dir / "manifest.kv");

  std::vector<IterationReport> reports;
  std::optional<TrainedSystem> previous;
  for (int it = 0; it < options.iterations; ++it) {
    std::filesystem::path iter_dir = options.run_dir / ("iter" + std::to_string(it));
    std::vector<std::pair<std::string, std::string>> synthetic;
    if (it > 0) {
      uint64_t sample_seed = options.fixed_sample ? config.seed : config.seed + static_cast<uint64_t>(it);
      synthetic = forward_translate(*previous, mono, options.sample_size, sample_seed, config);
      corpus::save_pairs_tsv(iter_dir / "synthetic.tsv", synthetic);
    }
    TrainedSystem system = train_system(parallel, it > 0 ? &synthetic : nullptr, config);
    system.provenance.set_int("iteration", it);
    system.save(iter_dir);

    IterationReport report;
    report.iteration = it;
    report.synthetic_size = synthetic.size();
    report.dev_bleu = evaluate_split(system, parallel, corpus::Split::kDev, config);
    report.test_bleu = evaluate_split(system, parallel, corpus::Split::kTest, config);
    report.dir = iter_dir.string();

    KvFile rk;
    rk.set_int("iteration", it);
    rk.set("dev_bleu", format_fixed6(report.dev_bleu));
    rk.set("test_bleu", format_fixed6(report.test_bleu));
    rk.set_int("synthetic_size", static_cast<long long>(report.synthetic_size));
    rk.save(iter_dir / "report.kv");

    reports.push_back(report);
    previous = std::move(system);
  }
  return reports;
}

std::vector<BenchmarkRow> benchmark(const corpus::ParallelCorpus& corpus,
                                    const lexicon::InformalDictionary& dict,
                                    const SystemConfig& config) {
  using Clock = std::chrono::steady_clock;
  auto pairs = corpus.split(corpus::Split::kTest);
  std::vector<std::string> refs;
  std::vector<Tokens> inputs;
  for (const auto* p : pairs) {
    inputs.push_back(preprocess_informal(p->informal, config));
    refs.push_back(reference_for_eval(p->formal, config));
  }

  std::vector<BenchmarkRow> rows;
  auto score_hyps = [&](const std::vector<std::string>& hyps) {
    bleu::BleuStats total;
    for (size_t i = 0; i < hyps.size(); ++i) total += bleu::sentence_stats(hyps[i], refs[i]);
    return bleu::corpus_bleu(total).bleu;
  };

  {
    auto t0 = Clock::now();
    std::vector<std::string> hyps;
    for (const Tokens& t : inputs) hyps.push_back(textnorm::detokenize(t));
    double score = score_hyps(hyps);
    rows.push_back({"No Modification", score, std::chrono::duration<double>(Clock::now() - t0).count()});
  }
  {
    auto t0 = Clock::now();
    std::vector<std::string> hyps;
    for (const Tokens& t : inputs)
      hyps.push_back(textnorm::detokenize(lexicon::translate_word_level(t, dict)));
    double score = score_hyps(hyps);
    rows.push_back({"Dictionary-Based", score, std::chrono::duration<double>(Clock::now() - t0).count()});
  }
  {
    auto t0 = Clock::now();
    TrainedSystem system = train_system(corpus, nullptr, config);
    std::vector<std::string> hyps = parallel_map<std::string>(inputs.size(), [&](size_t i) {
      return textnorm::detokenize(
          decoder::decode(inputs[i], system.table, system.lm, system.weights, config.dec));
    });
    double score = score_hyps(hyps);
    rows.push_back({"PBSMT", score, std::chrono::duration<double>(Clock::now() - t0).count()});
  }
  return rows;
}

}  // namespace stif::pipeline
