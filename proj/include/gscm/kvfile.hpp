#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gscm/error.hpp"

namespace gscm {

/// Flat `key = value` text file. `#` starts a comment; blank lines are
/// ignored; keys must be unique.
class KeyValueFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static KeyValueFile parse(std::istream& in, const std::string& origin = "<input>") {
    KeyValueFile kv;
    kv.origin_ = origin;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
      std::string key(trim(line.substr(0, eq)));
      std::string value(trim(line.substr(eq + 1)));
      if (key.empty()) throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
      if (kv.entries_.contains(key))
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
      kv.entries_.emplace(std::move(key), Entry{std::move(value), line_no});
    }
    return kv;
  }

  static KeyValueFile parse_string(const std::string& text, const std::string& origin = "<string>") {
    std::istringstream in(text);
    return parse(in, origin);
  }

  static KeyValueFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    return parse(in, path);
  }

  bool has(const std::string& key) const { return entries_.contains(key); }

  /// Rejects any key not in `known`.
  void check_keys(const std::set<std::string>& known) const {
    auto stem = [](const std::string& k) { return k.substr(0, k.rfind('_')); };
    for (const auto& [key, entry] : entries_) {
      if (known.contains(key)) continue;
      for (const auto& candidate : known)
        if (key.find('_') != std::string::npos && stem(candidate) == stem(key))
          throw ConfigError(where(entry) + ": bad unit in key '" + key + "', expected '" + candidate + "'");
      throw ConfigError(where(entry) + ": unknown key '" + key + "'");
    }
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : to_double(it->first, it->second);
  }

  long long get_int(const std::string& key, long long fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    long long v = 0;
    const std::string& s = it->second.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError(where(it->second) + ": '" + key + "' expects an integer, got '" + s + "'");
    return v;
  }

  std::string get_string(const std::string& key, const std::string& fallback) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second.value;
  }

  /// Comma-separated list of numbers.
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<double> out;
    std::string_view rest = it->second.value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string item(trim(rest.substr(0, comma)));
      out.push_back(to_double(key, Entry{item, it->second.line}));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  /// Comma-separated list of unsigned integers.
  std::vector<std::uint64_t> get_uints(const std::string& key, std::vector<std::uint64_t> fallback) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) return fallback;
    std::vector<std::uint64_t> out;
    std::string_view rest = it->second.value;
    while (true) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
        throw ConfigError(where(it->second) + ": '" + key + "' expects non-negative integers, got '" +
                          std::string(item) + "'");
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  const std::string& origin() const noexcept { return origin_; }
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

  std::string where(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? origin_ : where(it->second);
  }

 private:
  static std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::string where(const Entry& e) const { return origin_ + ":" + std::to_string(e.line); }

  double to_double(const std::string& key, const Entry& e) const {
    double v = 0.0;
    const std::string& s = e.value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      throw ConfigError(where(e) + ": '" + key + "' expects a number, got '" + s + "'");
    return v;
  }

  std::string origin_;
  std::map<std::string, Entry> entries_;
};

}  // namespace gscm
