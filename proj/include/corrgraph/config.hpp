#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "corrgraph/modelcheck.hpp"
#include "corrgraph/sampler.hpp"

namespace corrgraph {

/// Plain-text configuration:
///
///   # comment
///   [chain]
///   n_iter = 10000
///
/// Keys are addressed as "section.key". Only known keys are accepted.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  /// Throws InputError for keys outside the known set.
  void set(const std::string& dotted_key, const std::string& value);
  bool has(const std::string& dotted_key) const { return entries_.count(dotted_key) != 0; }
  std::optional<std::string> get(const std::string& dotted_key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  char get_delimiter(const std::string& key, char fallback) const;

  const std::map<std::string, std::string>& entries() const noexcept { return entries_; }
  /// Sectioned text that parses back to the same entries.
  std::string dump() const;

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> entries_;
};

ChainConfig chain_config_from(const Config& c);
PredictConfig predict_config_from(const Config& c);
LikelihoodForm parse_likelihood_form(const std::string& s);

/// Square matrix written row by row: rows separated by ';', entries by ','
/// or whitespace.
linalg::SymMatrix parse_matrix(const std::string& text);

}  // namespace corrgraph
