#ifndef STIF_RUN_CONFIG_HPP
#define STIF_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include "stif/corpus.hpp"
#include "stif/pipeline.hpp"

namespace stif {

// Every tunable of the toolkit in one declarative file; unknown keys are
// rejected so typos fail loudly. All randomness flows from `seed`.
struct RunConfig {
  uint64_t seed = 42;
  int workers = 0;  // 0 = hardware concurrency

  corpus::FilterConfig filter;
  pipeline::SystemConfig system;
  size_t sample_size = 2500;
  bool fixed_sample = false;
  bool bleu_lowercase = true;

  std::string dump() const;
  static RunConfig parse(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static RunConfig load(const std::filesystem::path& path);
};

}  // namespace stif

#endif  // STIF_RUN_CONFIG_HPP
