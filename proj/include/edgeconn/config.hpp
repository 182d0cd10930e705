#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "edgeconn/types.hpp"

namespace edgeconn {

// Tunable constants of the clustering pipeline. Unset optionals take the
// value of the chosen profile; "paper" uses the asymptotic formulas, "scaled"
// uses constants that make the pipeline do real work on small graphs.
struct PipelineConfig {
  std::string profile = "paper";

  std::optional<double> alpha0;              // teleport probability of the probes
  std::optional<double> phi0;                // conductance bound for cuts
  std::optional<double> delta_star;          // passive super vertex degree threshold
  std::optional<double> delta_star_factor;   // ... as a multiple of delta / alpha0
  std::optional<double> s0;                  // strength at which a component is a cluster
  std::optional<double> s0_factor;           // ... as a multiple of delta / alpha0
  std::optional<double> fallback_degree;     // min degree at or below which the exact routine runs
  std::optional<double> certify_min_degree;  // smallest min degree the certifier accepts

  double trim_fraction = 0.6;        // trim v once it lost more than this share of its degree
  double loose_slack = 1;            // loose: at least d(v)/2 - slack edges leave the cluster
  double core_fraction = 0.25;       // core kept when its internal edges exceed this share
  double passive_edge_fraction = 0.05;
  double y_select_factor = 128;
  double segment_divisor = 512;
  double even_segment_divisor = 256;
  double uncaptured_factor = 64;
  double small_volume_divisor = 16;
  double balanced_probe_count = 16;
  double probe_set_factor = 4;
  std::uint64_t slice = 1u << 14;
  bool sparse_certificate_first = false;

  static PipelineConfig paper() { return {}; }
  static PipelineConfig scaled() {
    PipelineConfig c;
    c.profile = "scaled";
    return c;
  }
};

// Constants resolved for one input graph.
struct Constants {
  double alpha0 = 0;
  double phi0 = 0;
  double delta_star = 0;
  double s0 = 0;
  double fallback_degree = 0;
  double certify_min_degree = 0;
  std::uint64_t delta = 0;
};

inline Constants resolve(const PipelineConfig& cfg, std::size_t n, std::size_t m, std::uint64_t delta) {
  const double lgn = std::log2(std::max<double>(2, static_cast<double>(n)));
  const double lgm = std::log2(std::max<double>(2, static_cast<double>(m)));
  const double d = static_cast<double>(delta);
  Constants k;
  k.delta = delta;
  double ds_factor, s0_factor;
  if (cfg.profile == "paper") {
    k.alpha0 = 1 / std::pow(lgn, 5);
    k.phi0 = 1 / (20 * lgm);
    ds_factor = lgn;
    s0_factor = 64;
    k.fallback_degree = std::pow(lgm, 5);
    k.certify_min_degree = std::pow(lgm, 5);
  } else if (cfg.profile == "scaled") {
    k.alpha0 = 0.05;
    k.phi0 = std::max(0.1, delta > 0 ? 1 / d : 1.0);
    ds_factor = 0;
    s0_factor = 0;
    k.fallback_degree = 3;
    k.certify_min_degree = 2;
  } else {
    throw PreconditionError("unknown profile: " + cfg.profile);
  }
  if (cfg.alpha0) k.alpha0 = *cfg.alpha0;
  if (cfg.profile == "scaled") {
    // delta* = 4 delta and s0 = delta whatever alpha0 is.
    ds_factor = 4 * k.alpha0;
    s0_factor = k.alpha0;
  }
  if (cfg.phi0) k.phi0 = *cfg.phi0;
  if (cfg.delta_star_factor) ds_factor = *cfg.delta_star_factor;
  if (cfg.s0_factor) s0_factor = *cfg.s0_factor;
  k.delta_star = cfg.delta_star ? *cfg.delta_star : ds_factor * d / k.alpha0;
  k.s0 = cfg.s0 ? *cfg.s0 : s0_factor * d / k.alpha0;
  if (cfg.fallback_degree) k.fallback_degree = *cfg.fallback_degree;
  if (cfg.certify_min_degree) k.certify_min_degree = *cfg.certify_min_degree;
  if (!(k.alpha0 > 0 && k.alpha0 < 1)) throw PreconditionError("alpha0 must lie in (0,1)");
  if (!(k.phi0 > 0)) throw PreconditionError("phi0 must be positive");
  if (!(k.s0 >= 1)) throw PreconditionError("s0 must be at least 1");
  return k;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace detail

// Applies "key = value" lines (a flat subset of TOML) on top of cfg.
// A "profile" key switches the base profile. Unknown keys are errors.
inline void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::map<std::string, std::optional<double>*> opt{
      {"alpha0", &cfg.alpha0},
      {"phi0", &cfg.phi0},
      {"delta_star", &cfg.delta_star},
      {"delta_star_factor", &cfg.delta_star_factor},
      {"s0", &cfg.s0},
      {"s0_factor", &cfg.s0_factor},
      {"fallback_degree", &cfg.fallback_degree},
      {"certify_min_degree", &cfg.certify_min_degree},
  };
  std::map<std::string, double*> plain{
      {"trim_fraction", &cfg.trim_fraction},
      {"loose_slack", &cfg.loose_slack},
      {"core_fraction", &cfg.core_fraction},
      {"passive_edge_fraction", &cfg.passive_edge_fraction},
      {"y_select_factor", &cfg.y_select_factor},
      {"segment_divisor", &cfg.segment_divisor},
      {"even_segment_divisor", &cfg.even_segment_divisor},
      {"uncaptured_factor", &cfg.uncaptured_factor},
      {"small_volume_divisor", &cfg.small_volume_divisor},
      {"balanced_probe_count", &cfg.balanced_probe_count},
      {"probe_set_factor", &cfg.probe_set_factor},
  };
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key == "profile") {
      if (value != "paper" && value != "scaled") throw ParseError(lineno, "unknown profile " + value);
      cfg.profile = value;
      continue;
    }
    if (key == "sparse_certificate_first") {
      if (value != "true" && value != "false") throw ParseError(lineno, "expected true or false");
      cfg.sparse_certificate_first = value == "true";
      continue;
    }
    double x;
    std::size_t used = 0;
    try {
      x = std::stod(value, &used);
    } catch (const std::exception&) {
      throw ParseError(lineno, "expected a number for " + key);
    }
    if (used != value.size()) throw ParseError(lineno, "expected a number for " + key);
    if (key == "slice") {
      if (x < 1) throw ParseError(lineno, "slice must be positive");
      cfg.slice = static_cast<std::uint64_t>(x);
    } else if (auto it = opt.find(key); it != opt.end()) {
      *it->second = x;
    } else if (auto jt = plain.find(key); jt != plain.end()) {
      *jt->second = x;
    } else {
      throw ParseError(lineno, "unknown key " + key);
    }
  }
}

inline PipelineConfig load_profile(const std::string& name_or_path) {
  if (name_or_path == "paper") return PipelineConfig::paper();
  if (name_or_path == "scaled") return PipelineConfig::scaled();
  std::ifstream in(name_or_path);
  if (!in) throw ParseError(0, "cannot open profile " + name_or_path);
  std::stringstream buf;
  buf << in.rdbuf();
  PipelineConfig cfg;
  apply_config_text(cfg, buf.str());
  return cfg;
}

}  // namespace edgeconn
