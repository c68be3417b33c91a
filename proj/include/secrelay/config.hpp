#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "secrelay/experiments.hpp"

namespace secrelay {

// Flat sectioned key=value configuration.  Powers always carry an explicit
// unit suffix ("db" or "lin"); see data/example.ini for the full key list.
struct RunConfig {
  // [scenario] -- exactly one of geometry / raw gains
  std::optional<Geometry> geometry;
  std::optional<ChannelGains> raw_gains;
  bool normalize = true;
  double p1 = 10.0;  // linear
  double p2 = 0.0;   // linear
  std::optional<double> rs1_target;

  // [params] -- evaluation point for the rates command
  std::optional<double> eta2, rho2, rho3, gamma, p2_2, p2_3;

  // [optimizer]
  SchemeType scheme = SchemeType::dpc_3phase;
  OptBudget budget;
  uint64_t seed = 1;
  int threads = 0;

  // [sweep]
  SweepSpec sweep;
  bool sweep_configured = false;

  // [boundgap]
  BoundGapSpec boundgap;

  // [dof]
  DofSpec dof;

  // [dmc]
  std::string dmc_mode = "single";  // single | three | brute
  std::map<std::string, std::string> dmc_paths;
  std::array<double, 3> dmc_eta{0.4, 0.3, 0.3};
  int dmc_v2_card = 2, dmc_x2_card = 2;
  double dmc_step = 0.25;
  bool dmc_search_x2 = true;

  // [output]
  std::string out_dir = ".";

  Scenario make_scenario() const;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// "10 db" -> 10.0 dB in linear scale; "100 lin" -> 100.0.
double parse_power(const std::string& value, const std::string& key);

}  // namespace secrelay
