#ifndef STIF_KVFILE_HPP
#define STIF_KVFILE_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stif {

// Flat `key = value` text format with `#` comments. Order-preserving; used
// for run configs, weight files, and per-iteration reports.
class KvFile {
 public:
  void set(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, long long value);
  void set_bool(const std::string& key, bool value);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws if absent
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string dump() const;
  static KvFile parse(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static KvFile load(const std::filesystem::path& path);

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// Whole-file text IO used across the toolkit (UTF-8, LF).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines);

}  // namespace stif

#endif  // STIF_KVFILE_HPP
