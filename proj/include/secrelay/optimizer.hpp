#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secrelay/awgn.hpp"

namespace secrelay {

enum class SchemeType { dpc_3phase, nodpc_3phase, dpc_single, nodpc_single };

const char* scheme_name(SchemeType s);
bool scheme_uses_dpc(SchemeType s);
bool scheme_single_phase(SchemeType s);

struct OptBudget {
  int starts = 64;
  int evals_per_start = 2000;
  double step_tol = 1e-7;
};

struct OptProblem {
  Scenario scenario;
  SchemeType scheme = SchemeType::dpc_3phase;
  OptBudget budget;
  uint64_t seed = 1;
  int threads = 0;
  // pin individual decision variables (used by reduced/toy problems)
  std::optional<double> fix_eta2, fix_rho2, fix_rho3, fix_p2_2, fix_p2_3;
  // extra deterministic starting points, e.g. the optimum of a nested scheme
  std::vector<SchemeParams> warm_starts;
};

enum class OptStatus { feasible_opt, no_feasible_point };

struct StartTrace {
  int start = 0;
  bool feasible = false;
  double r2 = 0.0;
  SchemeParams params;
};

struct OptResult {
  OptStatus status = OptStatus::no_feasible_point;
  SchemeParams best;
  RateReport report;
  std::vector<StartTrace> trace;
  std::string message;
};

// Multi-start pattern search over (eta2, rho2, rho3, p2_2, p2_3) with the
// relay fraction gamma recovered per point from the secrecy constraint.
OptResult solve(const OptProblem& p);

// Recovers gamma for a parameter point with everything else fixed.  With
// DPC the leak equality is root-found (bracket scan plus bisection); without
// DPC the smallest gamma satisfying the secrecy inequality is returned.
// nullopt when no admissible gamma exists.
std::optional<double> resolve_gamma(const Scenario& sc, SchemeType scheme,
                                    const SchemeParams& partial);

// Maximize the primary tail-phase secrecy rate for the mixed
// relay-plus-jamming phase and for the split relay/jam configuration under
// shared time and energy budgets.  Returns (mixed*, split*).
std::pair<double, double> compare_relay_jam_split(const Scenario& sc, double eta2, double p2_3,
                                                  int grid = 201);

}  // namespace secrelay
