// stif: informal -> formal Indonesian style transfer toolkit.
//
// Subcommands cover the whole pipeline: corpus filtering, preprocessing,
// phrase-based training, translation, BLEU evaluation, iterative
// forward-translation training, and a benchmark table.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stif/bleu.hpp"
#include "stif/corpus.hpp"
#include "stif/error.hpp"
#include "stif/kvfile.hpp"
#include "stif/lexicon.hpp"
#include "stif/parallel.hpp"
#include "stif/pipeline.hpp"
#include "stif/run_config.hpp"
#include "stif/textnorm.hpp"

namespace {

using namespace stif;

struct GlobalArgs {
  std::string config_path;
  int workers = -1;  // -1: take from config
  uint64_t seed = 0;
  bool seed_set = false;
};

RunConfig load_config(const GlobalArgs& args) {
  RunConfig config = args.config_path.empty() ? RunConfig{} : RunConfig::load(args.config_path);
  if (args.workers >= 0) config.workers = args.workers;
  if (args.seed_set) {
    config.seed = args.seed;
    config.system.seed = args.seed;
  }
  set_worker_count(config.workers);
  return config;
}

corpus::ParallelCorpus load_corpus_arg(const std::string& data_dir) {
  return corpus::load_split_dir(data_dir);
}

std::vector<std::string> read_input_lines(const std::string& path) {
  if (path.empty() || path == "-") {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(std::cin, line)) lines.push_back(line);
    return lines;
  }
  return read_lines(path);
}

void write_output_lines(const std::string& path, const std::vector<std::string>& lines) {
  if (path.empty() || path == "-") {
    for (const auto& l : lines) std::cout << l << "\n";
    return;
  }
  write_lines(path, lines);
}

int cmd_filter(const GlobalArgs& global, const std::string& input, const std::string& output,
               const std::string& english_words) {
  RunConfig config = load_config(global);
  std::vector<corpus::RawDocument> docs;
  size_t n = 0;
  for (const std::string& line : read_input_lines(input)) {
    std::string text = trim(line);
    if (text.empty()) continue;
    docs.push_back({std::to_string(n++), text, ""});
  }
  std::unordered_set<std::string> vocab;
  if (!english_words.empty()) vocab = corpus::load_wordlist(english_words);
  corpus::FilterSummary summary;
  corpus::MonolingualCorpus mono = corpus::filter_corpus(docs, config.filter, vocab, &summary);
  write_output_lines(output, mono.sentences);
  std::fprintf(stderr,
               "filter: %zu in, %zu kept (%zu length, %zu english, %zu duplicate, %zu empty)\n",
               summary.input, summary.kept, summary.dropped_length, summary.dropped_english,
               summary.dropped_duplicate, summary.dropped_empty);
  return 0;
}

int cmd_preprocess(const GlobalArgs& global, const std::string& input, const std::string& output,
                   const std::string& side, const std::string& stif_dir,
                   const std::string& stif_split) {
  RunConfig config = load_config(global);
  if (!stif_dir.empty()) {
    corpus::ParallelCorpus corpus = load_corpus_arg(stif_dir);
    auto split = corpus::split_from_name(stif_split);
    if (!split) throw Error("unknown split: " + stif_split);
    write_output_lines(output, corpus::export_stif_pairs(corpus, *split));
    return 0;
  }
  std::vector<std::string> out;
  for (const std::string& line : read_input_lines(input)) {
    Tokens tokens = side == "formal" ? pipeline::preprocess_formal(line, config.system)
                                     : pipeline::preprocess_informal(line, config.system);
    out.push_back(textnorm::detokenize(tokens));
  }
  write_output_lines(output, out);
  return 0;
}

int cmd_stats(const GlobalArgs& global, const std::string& input, const std::string& side) {
  RunConfig config = load_config(global);
  std::vector<Tokens> sentences;
  for (const std::string& line : read_input_lines(input)) {
    if (trim(line).empty()) continue;
    sentences.push_back(side == "formal" ? pipeline::preprocess_formal(line, config.system)
                                         : pipeline::preprocess_informal(line, config.system));
  }
  corpus::CorpusStats stats = corpus::compute_stats(sentences);
  std::cout << corpus::format_stats_table(stats) << "\n" << corpus::format_stats_kv(stats);
  return 0;
}

int cmd_train(const GlobalArgs& global, const std::string& data_dir, const std::string& out_dir,
              const std::string& synthetic_tsv) {
  RunConfig config = load_config(global);
  corpus::ParallelCorpus corpus = load_corpus_arg(data_dir);
  std::vector<std::pair<std::string, std::string>> synthetic;
  if (!synthetic_tsv.empty()) synthetic = corpus::load_pairs_tsv(synthetic_tsv);
  pipeline::TrainedSystem system =
      pipeline::train_system(corpus, synthetic_tsv.empty() ? nullptr : &synthetic, config.system);
  system.save(out_dir);
  std::fprintf(stderr, "train: %zu phrase options over %zu source phrases -> %s\n",
               system.table.option_count(), system.table.source_count(), out_dir.c_str());
  return 0;
}

int cmd_translate(const GlobalArgs& global, const std::string& model_dir, const std::string& input,
                  const std::string& output) {
  RunConfig config = load_config(global);
  pipeline::TrainedSystem system = pipeline::TrainedSystem::load(model_dir);
  std::vector<std::string> lines = read_input_lines(input);
  write_output_lines(output, pipeline::translate_corpus(system, lines, config.system));
  return 0;
}

int cmd_evaluate(const GlobalArgs& global, const std::string& hyp_path, const std::string& ref_path,
                 bool mask_refs) {
  RunConfig config = load_config(global);
  std::vector<std::string> hyps = read_lines(hyp_path);
  std::vector<std::string> refs = read_lines(ref_path);
  if (hyps.size() != refs.size())
    throw Error("evaluate: line count mismatch (" + std::to_string(hyps.size()) + " vs " +
                std::to_string(refs.size()) + ")");
  if (mask_refs)
    for (std::string& r : refs) r = pipeline::reference_for_eval(r, config.system);
  bleu::BleuScore score = bleu::corpus_bleu(hyps, refs, {config.bleu_lowercase});
  std::printf("BLEU = %.2f (BP = %.3f, ratio = %.3f)\n", score.bleu, score.brevity_penalty,
              static_cast<double>(score.hyp_len) / static_cast<double>(score.ref_len));
  std::printf("precisions: %.1f / %.1f / %.1f / %.1f\n", score.precisions[0], score.precisions[1],
              score.precisions[2], score.precisions[3]);
  KvFile kv;
  kv.set("bleu", format_fixed6(score.bleu));
  kv.set("brevity_penalty", format_fixed6(score.brevity_penalty));
  for (size_t n = 0; n < 4; ++n)
    kv.set("precision" + std::to_string(n + 1), format_fixed6(score.precisions[n]));
  kv.set_int("hyp_len", static_cast<long long>(score.hyp_len));
  kv.set_int("ref_len", static_cast<long long>(score.ref_len));
  std::cout << kv.dump();
  return 0;
}

int cmd_iterate(const GlobalArgs& global, const std::string& data_dir, const std::string& mono_path,
                const std::string& run_dir, int iterations, long long sample_size,
                bool fixed_sample) {
  RunConfig config = load_config(global);
  corpus::ParallelCorpus corpus = load_corpus_arg(data_dir);
  corpus::MonolingualCorpus mono = corpus::load_mono(mono_path);
  pipeline::IterateOptions options;
  options.iterations = iterations;
  options.sample_size = sample_size >= 0 ? static_cast<size_t>(sample_size) : config.sample_size;
  options.fixed_sample = fixed_sample || config.fixed_sample;
  options.run_dir = run_dir;
  auto reports = pipeline::iterate(corpus, mono, options, config.system);
  std::printf("%-10s %10s %10s %12s\n", "iteration", "dev", "test", "synthetic");
  for (const auto& r : reports)
    std::printf("%-10d %10.2f %10.2f %12zu\n", r.iteration, r.dev_bleu, r.test_bleu,
                r.synthetic_size);
  return 0;
}

int cmd_benchmark(const GlobalArgs& global, const std::string& data_dir,
                  const std::string& dict_path) {
  RunConfig config = load_config(global);
  corpus::ParallelCorpus corpus = load_corpus_arg(data_dir);
  lexicon::InformalDictionary dict = lexicon::load_dictionary(dict_path);
  std::fprintf(stderr, "dictionary: %zu entries%s%s\n", dict.size(),
               dict.multiword ? ", multi-word values" : "",
               dict.value_key_overlap ? ", value/key overlap" : "");
  auto rows = pipeline::benchmark(corpus, dict, config.system);
  std::printf("%-18s %8s %9s\n", "Method", "BLEU", "seconds");
  for (const auto& row : rows)
    std::printf("%-18s %8.2f %9.2f\n", row.method.c_str(), row.bleu, row.seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"informal->formal Indonesian style transfer toolkit"};
  app.require_subcommand(1);

  GlobalArgs global;
  app.add_option("--config", global.config_path, "run configuration file (key = value)");
  app.add_option("--workers", global.workers, "worker threads (0 = hardware)");
  auto* seed_opt = app.add_option("--seed", global.seed, "root random seed");

  std::string input, output, side = "informal", english_words, stif_dir, stif_split = "train";
  std::string data_dir, out_dir, synthetic_tsv, model_dir, hyp_path, ref_path, mono_path, run_dir;
  std::string dict_path;
  bool mask_refs = false, fixed_sample = false, dump_config = false;
  int iterations = 1;
  long long sample_size = -1;

  auto* filter = app.add_subcommand("filter", "filter a raw monolingual pool");
  filter->add_option("--input", input, "raw sentences, one per line (- for stdin)");
  filter->add_option("--output", output, "filtered output (- for stdout)");
  filter->add_option("--english-words", english_words, "English wordlist for the ratio filter");

  auto* preprocess = app.add_subcommand("preprocess", "normalize text or export <STIF> pairs");
  preprocess->add_option("--input", input, "text input (- for stdin)");
  preprocess->add_option("--output", output, "output (- for stdout)");
  preprocess->add_option("--side", side, "informal|formal")->check(CLI::IsMember({"informal", "formal"}));
  preprocess->add_option("--stif-export", stif_dir, "corpus dir; exports `informal <STIF> formal` lines");
  preprocess->add_option("--split", stif_split, "split to export")
      ->check(CLI::IsMember({"train", "dev", "test"}));

  auto* stats = app.add_subcommand("stats", "token/punctuation statistics of a corpus");
  stats->add_option("--input", input, "sentences, one per line (- for stdin)");
  stats->add_option("--side", side, "informal|formal preprocessing before counting")
      ->check(CLI::IsMember({"informal", "formal"}));

  auto* train = app.add_subcommand("train", "train a phrase-based system");
  train->add_option("--data", data_dir, "corpus dir with train/dev/test files")->required();
  train->add_option("--out", out_dir, "output model dir")->required();
  train->add_option("--synthetic", synthetic_tsv, "extra synthetic pairs (TSV)");

  auto* translate = app.add_subcommand("translate", "translate informal text");
  translate->add_option("--model", model_dir, "trained model dir")->required();
  translate->add_option("--input", input, "input file (- for stdin)");
  translate->add_option("--output", output, "output file (- for stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "corpus BLEU of hypotheses vs references");
  evaluate->add_option("--hyp", hyp_path, "hypothesis file")->required();
  evaluate->add_option("--ref", ref_path, "reference file")->required();
  evaluate->add_flag("--mask-refs", mask_refs, "apply entity masking to references");

  auto* iterate = app.add_subcommand("iterate", "iterative forward-translation training");
  iterate->add_option("--data", data_dir, "corpus dir with train/dev/test files")->required();
  iterate->add_option("--mono", mono_path, "monolingual informal pool")->required();
  iterate->add_option("--run-dir", run_dir, "run output dir")->required();
  iterate->add_option("--iterations", iterations, "number of iterations (incl. iteration 0)");
  iterate->add_option("--sample-size", sample_size, "synthetic sample size per iteration");
  iterate->add_flag("--fixed-sample", fixed_sample, "re-translate the same sample every iteration");

  auto* benchmark = app.add_subcommand("benchmark", "No Modification / Dictionary-Based / PBSMT table");
  benchmark->add_option("--data", data_dir, "corpus dir with train/dev/test files")->required();
  benchmark->add_option("--dict", dict_path, "informal->formal dictionary")->required();

  auto* config_cmd = app.add_subcommand("config", "print the effective configuration");
  config_cmd->add_flag("--dump", dump_config, "write the full key set to stdout");

  CLI11_PARSE(app, argc, argv);
  global.seed_set = seed_opt->count() > 0;

  try {
    if (filter->parsed()) return cmd_filter(global, input, output, english_words);
    if (preprocess->parsed()) return cmd_preprocess(global, input, output, side, stif_dir, stif_split);
    if (stats->parsed()) return cmd_stats(global, input, side);
    if (train->parsed()) return cmd_train(global, data_dir, out_dir, synthetic_tsv);
    if (translate->parsed()) return cmd_translate(global, model_dir, input, output);
    if (evaluate->parsed()) return cmd_evaluate(global, hyp_path, ref_path, mask_refs);
    if (iterate->parsed())
      return cmd_iterate(global, data_dir, mono_path, run_dir, iterations, sample_size, fixed_sample);
    if (benchmark->parsed()) return cmd_benchmark(global, data_dir, dict_path);
    if (config_cmd->parsed()) {
      std::cout << load_config(global).dump();
      return 0;
    }
  } catch (const stif::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
