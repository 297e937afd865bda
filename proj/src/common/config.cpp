#include "mesram/common/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mesram/common/error.hpp"

namespace mesram {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(sep, start);
    const auto end = pos == std::string_view::npos ? text.size() : pos;
    out.emplace_back(trim(text.substr(start, end - start)));
    if (pos == std::string_view::npos) {
      break;
    }
    start = pos + 1;
  }
  return out;
}

double parse_real(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  if (s.empty()) {
    throw ConfigError("empty value for '" + std::string(what) + "'");
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + std::string(what) + "' is not a number: " + s);
  }
  if (used != s.size() || !std::isfinite(value)) {
    throw ConfigError("'" + std::string(what) + "' is not a finite number: " + s);
  }
  return value;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("'" + std::string(what) + "' is not an unsigned integer: " +
                      std::string(s));
  }
  return value;
}

bool ConfigSection::has(std::string_view key) const { return values_.find(key) != values_.end(); }

void ConfigSection::set(std::string key, std::string value) {
  values_[std::move(key)] = std::move(value);
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  ConfigDocument doc;
  std::string current;
  doc.sections_.emplace("", ConfigSection(""));
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
      line = line.substr(0, c);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      doc.sections_.try_emplace(current, ConfigSection(current));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    }
    auto& section = doc.sections_.at(current);
    if (section.has(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" +
                        std::string(key) + "'");
    }
    section.set(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return doc;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ConfigSection& ConfigDocument::section(std::string_view name) const {
  static const ConfigSection empty;
  const auto it = sections_.find(name);
  return it == sections_.end() ? empty : it->second;
}

bool ConfigDocument::has_section(std::string_view name) const {
  return sections_.find(name) != sections_.end();
}

std::vector<std::string> ConfigDocument::section_names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : sections_) {
    names.push_back(name);
  }
  return names;
}

ConfigSection& ConfigDocument::mutable_section(const std::string& name) {
  return sections_.try_emplace(name, ConfigSection(name)).first->second;
}

const std::string* SectionReader::lookup(std::string_view key) {
  known_.emplace(key);
  const auto& values = section_.values();
  const auto it = values.find(key);
  return it == values.end() ? nullptr : &it->second;
}

double SectionReader::real(std::string_view key, double fallback) {
  const auto* v = lookup(key);
  return v ? parse_real(*v, key) : fallback;
}

std::uint64_t SectionReader::u64(std::string_view key, std::uint64_t fallback) {
  const auto* v = lookup(key);
  return v ? parse_u64(*v, key) : fallback;
}

bool SectionReader::flag(std::string_view key, bool fallback) {
  const auto* v = lookup(key);
  if (!v) {
    return fallback;
  }
  if (*v == "true" || *v == "1" || *v == "yes") {
    return true;
  }
  if (*v == "false" || *v == "0" || *v == "no") {
    return false;
  }
  throw ConfigError("'" + std::string(key) + "' is not a boolean: " + *v);
}

std::string SectionReader::text(std::string_view key, std::string fallback) {
  const auto* v = lookup(key);
  return v ? *v : fallback;
}

std::array<double, 3> SectionReader::vec3(std::string_view key, std::array<double, 3> fallback) {
  const auto* v = lookup(key);
  if (!v) {
    return fallback;
  }
  const auto parts = split(*v, ',');
  if (parts.size() != 3) {
    throw ConfigError("'" + std::string(key) + "' needs three comma-separated components");
  }
  return {parse_real(parts[0], key), parse_real(parts[1], key), parse_real(parts[2], key)};
}

std::vector<std::string> SectionReader::list(std::string_view key,
                                             std::vector<std::string> fallback) {
  const auto* v = lookup(key);
  if (!v) {
    return fallback;
  }
  if (trim(*v).empty()) {
    return {};
  }
  return split(*v, ',');
}

void SectionReader::finish() const {
  for (const auto& [key, _] : section_.values()) {
    if (known_.find(key) == known_.end()) {
      const auto where = section_.name().empty() ? std::string("global scope")
                                                 : "[" + section_.name() + "]";
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

}  // namespace mesram
