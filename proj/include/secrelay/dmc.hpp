#pragma once

#include <array>
#include <optional>

#include "secrelay/pmf.hpp"

namespace secrelay {

// Finite-alphabet description of the coexistence problem.  The primary
// user's code is the pair (pmf_v1, x1_given_v1); the secondary user's
// design freedom is (v2_given_v1, x2_given_v1v2).  Variable names are
// fixed: v1, v2, x1, x2, y1, y2.
struct DmcScheme {
  JointPmf pmf_v1;            // over {v1}
  CondPmf v2_given_v1;        // {v2} | {v1}
  CondPmf x2_given_v1v2;      // {x2} | {v1, v2}
  CondPmf x1_given_v1;        // {x1} | {v1}
  CondPmf channel_with_t2;    // {y1, y2} | {x1, x2}
  CondPmf channel_without_t2; // {y1, y2} | {x1}
  std::array<double, 3> eta{1.0, 0.0, 0.0};

  void validate() const;

  // Relaying law of the clean phase: x2 drawn from the phase-2 law with
  // the secondary message integrated out.
  CondPmf x2_given_v1_clean() const;
};

struct DmcRateReport {
  double r2 = 0.0;
  double r_s1 = 0.0;        // primary secrecy rate of the untouched code
  double r_s1_prime = 0.0;  // rate per bin of the primary wiretap code
  // slack of the reliable-decoding constraint (>= 0 required)
  double reliability_slack = 0.0;
  // signed residual of the secrecy equality (= 0 required)
  double secrecy_residual = 0.0;

  bool feasible(double secrecy_tol = 1e-6, double reliability_tol = 1e-6) const {
    return reliability_slack >= -reliability_tol && std::abs(secrecy_residual) <= secrecy_tol;
  }
};

// Single-phase rate with Gelfand-Pinsker coding at the secondary
// transmitter; the report carries the coexistence residuals.
DmcRateReport dmc_single_phase_rate(const DmcScheme& s);

// Three-phase extension: listen, transmit, clean relay.
DmcRateReport dmc_three_phase_rate(const DmcScheme& s);

// Variant with the tail phase split in two (fractions eta3p + eta4 equal
// the scheme's eta3), each with its own relaying law.
DmcRateReport dmc_four_phase_rate(const DmcScheme& s, double eta3p, double eta4,
                                  const CondPmf& x2_phase3, const CondPmf& x2_phase4);

// Fixed parts of the channel over which the brute-force search runs.
struct DmcFamily {
  JointPmf pmf_v1;
  CondPmf x1_given_v1;
  CondPmf channel_with_t2;
  CondPmf channel_without_t2;
};

struct BruteForceConfig {
  int v2_card = 2;
  int x2_card = 2;
  double grid_step = 0.25;
  // When false, x2 copies v2 and only the v2 law is searched; this is the
  // reduced family used by grid-refinement checks, and it lifts the
  // tractability guard on the step size.
  bool search_x2 = true;
  double secrecy_tol = 1e-6;
  double reliability_tol = 1e-6;
  int threads = 0;
};

struct BruteForceResult {
  bool found = false;
  DmcRateReport report;
  std::optional<DmcScheme> best;
  std::size_t evaluated = 0;
};

// Exhaustive search over simplex-gridded secondary laws; deterministic for
// a given grid.  Guard: alphabets <= 4 and step >= 0.05 for the full
// search.
BruteForceResult brute_force_best_r2(const DmcFamily& family, const BruteForceConfig& cfg);

struct DmcOuterBound {
  double r_s1_ub = 0.0;
  double r2_ub = 0.0;
};

// Capacity-equivocation outer bound for a joint law over
// (u, v, x1, x2, y1, y2).  Preconditions checked: the channel outputs are
// screened from the auxiliaries by the inputs, and y2 is a stochastically
// degraded version of y1 with respect to x1 (verified by a nonnegative
// least-squares factorization).
DmcOuterBound dmc_outer_bound(const JointPmf& p, double r_s1_target);

}  // namespace secrelay
