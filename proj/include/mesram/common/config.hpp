#pragma once

// Flat INI-style configuration: `[section]` headers followed by `key = value`
// lines. `#` and `;` start comments. Keys outside any section belong to the
// unnamed global section "".

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mesram {

class ConfigSection {
 public:
  ConfigSection() = default;
  explicit ConfigSection(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  bool has(std::string_view key) const;
  void set(std::string key, std::string value);
  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

 private:
  std::string name_;
  std::map<std::string, std::string, std::less<>> values_;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text);
  static ConfigDocument load(const std::string& path);

  /// Returns the named section, or an empty one when absent.
  const ConfigSection& section(std::string_view name) const;
  bool has_section(std::string_view name) const;
  std::vector<std::string> section_names() const;

  ConfigSection& mutable_section(const std::string& name);

 private:
  std::map<std::string, ConfigSection, std::less<>> sections_;
};

/// Typed reader over one section. Every key read is marked as known;
/// `finish()` throws ConfigError for any key that was never requested.
class SectionReader {
 public:
  explicit SectionReader(const ConfigSection& section) : section_(section) {}

  double real(std::string_view key, double fallback);
  std::uint64_t u64(std::string_view key, std::uint64_t fallback);
  bool flag(std::string_view key, bool fallback);
  std::string text(std::string_view key, std::string fallback);
  std::array<double, 3> vec3(std::string_view key, std::array<double, 3> fallback);
  std::vector<std::string> list(std::string_view key, std::vector<std::string> fallback);

  void finish() const;

 private:
  const std::string* lookup(std::string_view key);

  const ConfigSection& section_;
  std::set<std::string, std::less<>> known_;
};

double parse_real(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace mesram
