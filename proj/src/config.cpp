#include "corrgraph/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "corrgraph/error.hpp"

namespace corrgraph {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    throw InputError("config key '" + key + "': not a number: '" + v + "'");
  return out;
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      "chain.n_iter", "chain.burn_in", "chain.prop_sd_corr", "chain.prop_sd_sigma", "chain.prop_sd_gamma",
      "chain.k_norm", "chain.n_prime", "chain.seed", "chain.likelihood_form", "chain.learn_error_variances",
      "chain.prior_corr", "chain.prior_corr_sd", "chain.use_normalization", "chain.prior_only", "chain.sub_block", "chain.sigma2_max",
      "chain.gamma_max", "chain.initial_variance", "chain.initial_edge_cutoff", "chain.logdet_route",
      "chain.divergence_window", "chain.threshold",
      "data.delimiter", "data.subsample", "data.prune",
      "simulate.n", "simulate.sigma", "simulate.noise_column", "simulate.noise_variance", "simulate.seed",
      "predict.n_iter", "predict.burn_in", "predict.prop_sd_cell", "predict.prop_sd_corr", "predict.k_norm",
      "predict.seed", "predict.use_normalization", "predict.prior_corr_sd", "predict.cell_block",
      "predict.histogram_bins", "predict.logdet_route", "predict.unknown", "predict.sigma", "predict.mode",
      "largenet.threshold", "largenet.delimiter", "largenet.likelihood_form",
      "distance.strict_lengths",
  };
  return keys;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config c;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#' || t.front() == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(source, line_no, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty()) throw ParseError(source, line_no, "key outside of any [section]");
    try {
      c.set(section + "." + key, value);
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path.string());
  return parse(in, path.string());
}

void Config::set(const std::string& dotted_key, const std::string& value) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), dotted_key) == keys.end())
    throw InputError("unknown config key '" + dotted_key + "'");
  entries_[dotted_key] = value;
}

std::optional<std::string> Config::get(const std::string& dotted_key) const {
  const auto it = entries_.find(dotted_key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? to_double(key, *v) : fallback;
}

std::uint64_t Config::get_uint(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (v->empty() || ec != std::errc() || ptr != v->data() + v->size())
    throw InputError("config key '" + key + "': not a non-negative integer: '" + *v + "'");
  return out;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
  throw InputError("config key '" + key + "': not a boolean: '" + *v + "'");
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  const auto v = get(key);
  if (!v) return out;
  std::string s = *v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(to_double(key, tok));
  return out;
}

char Config::get_delimiter(const std::string& key, char fallback) const {
  const auto v = get(key);
  if (!v) return fallback;
  if (*v == "tab" || *v == "\\t") return '\t';
  if (*v == "comma") return ',';
  if (*v == "semicolon") return ';';
  if (v->size() == 1) return v->front();
  throw InputError("config key '" + key + "': delimiter must be a single character");
}

std::string Config::dump() const {
  std::string out;
  std::string section;
  for (const auto& [key, value] : entries_) {
    const auto dot = key.find('.');
    const std::string s = key.substr(0, dot);
    if (s != section) {
      if (!out.empty()) out += '\n';
      out += "[" + s + "]\n";
      section = s;
    }
    out += key.substr(dot + 1) + " = " + value + '\n';
  }
  return out;
}

LikelihoodForm parse_likelihood_form(const std::string& s) {
  if (s == "single_term") return LikelihoodForm::single_term;
  if (s == "two_term") return LikelihoodForm::two_term;
  throw InputError("likelihood_form must be single_term or two_term, got '" + s + "'");
}

namespace {

LogdetRoute parse_route(const std::string& key, const std::string& s) {
  if (s == "lowrank") return LogdetRoute::lowrank;
  if (s == "dense") return LogdetRoute::dense;
  throw InputError("config key '" + key + "' must be dense or lowrank, got '" + s + "'");
}

}  // namespace

ChainConfig chain_config_from(const Config& c) {
  ChainConfig cfg;
  cfg.n_iter = c.get_uint("chain.n_iter", cfg.n_iter);
  if (c.has("chain.burn_in")) cfg.burn_in = c.get_uint("chain.burn_in", 0);
  cfg.prop_sd_corr = c.get_double("chain.prop_sd_corr", cfg.prop_sd_corr);
  cfg.prop_sd_sigma = c.get_double("chain.prop_sd_sigma", cfg.prop_sd_sigma);
  cfg.prop_sd_gamma = c.get_double("chain.prop_sd_gamma", cfg.prop_sd_gamma);
  cfg.k_norm = c.get_uint("chain.k_norm", cfg.k_norm);
  cfg.n_prime = c.get_uint("chain.n_prime", cfg.n_prime);
  cfg.seed = c.get_uint("chain.seed", cfg.seed);
  if (auto v = c.get("chain.likelihood_form")) cfg.likelihood_form = parse_likelihood_form(*v);
  cfg.learn_error_variances = c.get_bool("chain.learn_error_variances", cfg.learn_error_variances);
  if (auto v = c.get("chain.prior_corr")) {
    if (*v == "uniform") cfg.prior_corr = CorrPrior::uniform;
    else if (*v == "gaussian_empirical") cfg.prior_corr = CorrPrior::gaussian_empirical;
    else throw InputError("chain.prior_corr must be uniform or gaussian_empirical, got '" + *v + "'");
  }
  cfg.prior_corr_sd = c.get_double("chain.prior_corr_sd", cfg.prior_corr_sd);
  cfg.use_normalization = c.get_bool("chain.use_normalization", cfg.use_normalization);
  cfg.prior_only = c.get_bool("chain.prior_only", cfg.prior_only);
  cfg.sub_block = c.get_uint("chain.sub_block", cfg.sub_block);
  cfg.sigma2_max = c.get_double("chain.sigma2_max", cfg.sigma2_max);
  cfg.gamma_max = c.get_double("chain.gamma_max", cfg.gamma_max);
  cfg.initial_variance = c.get_double("chain.initial_variance", cfg.initial_variance);
  cfg.initial_edge_cutoff = c.get_double("chain.initial_edge_cutoff", cfg.initial_edge_cutoff);
  if (auto v = c.get("chain.logdet_route")) cfg.logdet_route = parse_route("chain.logdet_route", *v);
  cfg.divergence_window = c.get_uint("chain.divergence_window", cfg.divergence_window);
  return cfg;
}

PredictConfig predict_config_from(const Config& c) {
  PredictConfig cfg;
  cfg.n_iter = c.get_uint("predict.n_iter", cfg.n_iter);
  if (c.has("predict.burn_in")) cfg.burn_in = c.get_uint("predict.burn_in", 0);
  cfg.prop_sd_cell = c.get_double("predict.prop_sd_cell", cfg.prop_sd_cell);
  cfg.prop_sd_corr = c.get_double("predict.prop_sd_corr", cfg.prop_sd_corr);
  cfg.k_norm = c.get_uint("predict.k_norm", cfg.k_norm);
  cfg.seed = c.get_uint("predict.seed", cfg.seed);
  cfg.use_normalization = c.get_bool("predict.use_normalization", cfg.use_normalization);
  cfg.prior_corr_sd = c.get_double("predict.prior_corr_sd", cfg.prior_corr_sd);
  cfg.cell_block = c.get_uint("predict.cell_block", cfg.cell_block);
  cfg.histogram_bins = c.get_uint("predict.histogram_bins", cfg.histogram_bins);
  if (auto v = c.get("predict.logdet_route")) cfg.logdet_route = parse_route("predict.logdet_route", *v);
  return cfg;
}

linalg::SymMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream rs(text);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::replace(row.begin(), row.end(), ',', ' ');
    std::istringstream in(row);
    std::vector<double> vals;
    std::string tok;
    while (in >> tok) vals.push_back(to_double("matrix", tok));
    if (!vals.empty()) rows.push_back(std::move(vals));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw InputError("empty matrix");
  linalg::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InputError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return linalg::SymMatrix(std::move(m));
}

}  // namespace corrgraph
