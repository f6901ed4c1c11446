#include "stif/run_config.hpp"

#include <set>

#include "stif/error.hpp"
#include "stif/kvfile.hpp"

namespace stif {

namespace {

std::string mask_kinds_to_string(const textnorm::MaskKinds& kinds) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(kinds.date, "date");
  add(kinds.percent, "percent");
  add(kinds.account, "account");
  add(kinds.number, "number");
  return out.empty() ? "none" : out;
}

textnorm::MaskKinds mask_kinds_from_string(const std::string& s) {
  textnorm::MaskKinds kinds = textnorm::MaskKinds::none();
  if (s == "none" || s.empty()) return kinds;
  for (const std::string& part : split_on(s, ',')) {
    std::string name = trim(part);
    if (name == "date")
      kinds.date = true;
    else if (name == "percent")
      kinds.percent = true;
    else if (name == "account")
      kinds.account = true;
    else if (name == "number")
      kinds.number = true;
    else
      throw Error("unknown mask kind: " + name);
  }
  return kinds;
}

}  // namespace

std::string RunConfig::dump() const {
  KvFile kv;
  kv.set_int("seed", static_cast<long long>(seed));
  kv.set_int("workers", workers);
  kv.set_int("filter.min_tokens", static_cast<long long>(filter.min_tokens));
  kv.set_int("filter.max_tokens", static_cast<long long>(filter.max_tokens));
  kv.set_double("filter.english_ratio", filter.english_ratio_threshold);
  kv.set_bool("norm.lowercase", system.norm.lowercase);
  kv.set_bool("norm.squeeze_repeats", system.norm.squeeze_repeats);
  kv.set("norm.mask", mask_kinds_to_string(system.norm.mask));
  kv.set_int("ibm1.iterations", system.ibm1.iterations);
  kv.set_int("phrase.max_len", static_cast<long long>(system.max_phrase_len));
  kv.set_int("phrase.top_k", static_cast<long long>(system.phrase_top_k));
  kv.set_int("lm.order", system.lm.order);
  kv.set_bool("lm.include_synthetic", system.lm_include_synthetic);
  for (size_t k = 0; k < 4; ++k)
    kv.set_double("weights.phrase" + std::to_string(k), system.weights.phrase[k]);
  kv.set_double("weights.lm", system.weights.lm);
  kv.set_double("weights.distortion", system.weights.distortion);
  kv.set_double("weights.word_penalty", system.weights.word_penalty);
  kv.set_int("decoder.beam_size", system.dec.beam_size);
  kv.set_int("decoder.distortion_limit", system.dec.distortion_limit);
  kv.set_double("decoder.oov_logprob", system.dec.oov_logprob);
  kv.set_int("tune.trials", system.tune_trials);
  kv.set_int("sample.size", static_cast<long long>(sample_size));
  kv.set_bool("sample.fixed", fixed_sample);
  kv.set_bool("bleu.lowercase", bleu_lowercase);
  return kv.dump();
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig config;
  KvFile kv = KvFile::parse(text);
  const std::set<std::string> known = {
      "seed",           "workers",
      "filter.min_tokens", "filter.max_tokens", "filter.english_ratio",
      "norm.lowercase", "norm.squeeze_repeats", "norm.mask",
      "ibm1.iterations", "phrase.max_len", "phrase.top_k",
      "lm.order",       "lm.include_synthetic",
      "weights.phrase0", "weights.phrase1", "weights.phrase2", "weights.phrase3",
      "weights.lm",     "weights.distortion", "weights.word_penalty",
      "decoder.beam_size", "decoder.distortion_limit", "decoder.oov_logprob",
      "tune.trials",    "sample.size", "sample.fixed", "bleu.lowercase"};
  for (const auto& [key, value] : kv.entries())
    if (!known.count(key)) throw Error("unknown config key: " + key);

  if (kv.has("seed")) config.seed = static_cast<uint64_t>(kv.get_int("seed"));
  if (kv.has("workers")) config.workers = static_cast<int>(kv.get_int("workers"));
  if (kv.has("filter.min_tokens"))
    config.filter.min_tokens = static_cast<size_t>(kv.get_int("filter.min_tokens"));
  if (kv.has("filter.max_tokens"))
    config.filter.max_tokens = static_cast<size_t>(kv.get_int("filter.max_tokens"));
  if (kv.has("filter.english_ratio"))
    config.filter.english_ratio_threshold = kv.get_double("filter.english_ratio");
  if (kv.has("norm.lowercase")) config.system.norm.lowercase = kv.get_bool("norm.lowercase");
  if (kv.has("norm.squeeze_repeats"))
    config.system.norm.squeeze_repeats = kv.get_bool("norm.squeeze_repeats");
  if (kv.has("norm.mask")) config.system.norm.mask = mask_kinds_from_string(kv.get("norm.mask"));
  if (kv.has("ibm1.iterations"))
    config.system.ibm1.iterations = static_cast<int>(kv.get_int("ibm1.iterations"));
  if (kv.has("phrase.max_len"))
    config.system.max_phrase_len = static_cast<size_t>(kv.get_int("phrase.max_len"));
  if (kv.has("phrase.top_k"))
    config.system.phrase_top_k = static_cast<size_t>(kv.get_int("phrase.top_k"));
  if (kv.has("lm.order")) config.system.lm.order = static_cast<int>(kv.get_int("lm.order"));
  if (kv.has("lm.include_synthetic"))
    config.system.lm_include_synthetic = kv.get_bool("lm.include_synthetic");
  for (size_t k = 0; k < 4; ++k) {
    std::string key = "weights.phrase" + std::to_string(k);
    if (kv.has(key)) config.system.weights.phrase[k] = kv.get_double(key);
  }
  if (kv.has("weights.lm")) config.system.weights.lm = kv.get_double("weights.lm");
  if (kv.has("weights.distortion"))
    config.system.weights.distortion = kv.get_double("weights.distortion");
  if (kv.has("weights.word_penalty"))
    config.system.weights.word_penalty = kv.get_double("weights.word_penalty");
  if (kv.has("decoder.beam_size"))
    config.system.dec.beam_size = static_cast<int>(kv.get_int("decoder.beam_size"));
  if (kv.has("decoder.distortion_limit"))
    config.system.dec.distortion_limit = static_cast<int>(kv.get_int("decoder.distortion_limit"));
  if (kv.has("decoder.oov_logprob"))
    config.system.dec.oov_logprob = kv.get_double("decoder.oov_logprob");
  if (kv.has("tune.trials")) config.system.tune_trials = static_cast<int>(kv.get_int("tune.trials"));
  if (kv.has("sample.size")) config.sample_size = static_cast<size_t>(kv.get_int("sample.size"));
  if (kv.has("sample.fixed")) config.fixed_sample = kv.get_bool("sample.fixed");
  if (kv.has("bleu.lowercase")) config.bleu_lowercase = kv.get_bool("bleu.lowercase");

  config.system.dec.max_phrase_len = static_cast<int>(config.system.max_phrase_len);
  config.system.seed = config.seed;
  return config;
}

void RunConfig::save(const std::filesystem::path& path) const { write_file(path, dump()); }

RunConfig RunConfig::load(const std::filesystem::path& path) { return parse(read_file(path)); }

}  // namespace stif
