#pragma once

#include <array>
#include <optional>
#include <utility>

#include "secrelay/channel.hpp"
#include "secrelay/common.hpp"

namespace secrelay {

// Feasibility tolerances shared by the scheme evaluators and the optimizer.
inline constexpr double kReliabilityTol = 1e-6;  // slack of the decoding constraint
inline constexpr double kSecrecyTol = 1e-6;      // |residual| of the leak equality

// Decision vector for the multi-phase schemes.  eta1 is the listening
// fraction (fixed by decodability), eta2 carries the secondary message,
// eta3 = 1 - eta1 - eta2 is the clean-relaying phase.  rho2/rho3 are the
// jamming power fractions, gamma the relay share of the remaining phase-2
// power, p2_2/p2_3 the per-phase transmit powers.
struct SchemeParams {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta3 = 0.0;
  double rho2 = 0.0;
  double rho3 = 0.0;
  double gamma = 0.0;
  double p2_2 = 0.0;
  double p2_3 = 0.0;

  static SchemeParams make(double eta1, double eta2, double rho2, double rho3, double gamma,
                           double p2_2, double p2_3);

  // average power constraint: eta2*p2_2 + eta3*p2_3 <= budget
  double average_power() const { return eta2 * p2_2 + eta3 * p2_3; }
  bool within_power(double p2_budget) const { return average_power() <= p2_budget + 1e-9; }
};

// A channel instance plus power budgets.  rs1_target defaults to the
// primary user's stand-alone secrecy capacity.
struct Scenario {
  ChannelGains gains;
  double p1 = 1.0;
  double p2 = 0.0;
  double rs1_target = 0.0;

  static Scenario make(const ChannelGains& gains, double p1, double p2,
                       std::optional<double> rs1_override = std::nullopt);
};

// The per-phase mutual-information terms reported alongside every rate.
// Names follow the receiving side: e.g. i_v1_y2_p3 is the information the
// eavesdropper collects about the primary signal in phase 3.
struct MiTerms {
  double i_v1_y1_p1 = 0.0;
  double i_v1_y2_p1 = 0.0;
  double i_v1_y1_p2 = 0.0;
  double i_v1_v2y2_p2 = 0.0;
  double i_v1_y2_p2_given_v2 = 0.0;
  double i_v1_v2 = 0.0;
  double i_v2_y2_p2 = 0.0;
  double i_v1_y1_p3 = 0.0;
  double i_v1_y2_p3 = 0.0;
  double mmse_alpha = 0.0;
};

struct RateReport {
  double r2 = 0.0;
  bool feasible = false;
  bool decodable = false;
  // slack of the reliability constraint (>= 0 required)
  double residual_reliability = 0.0;
  // signed residual of the secrecy constraint (= 0 required with DPC,
  // >= 0 sufficient without DPC)
  double residual_secrecy = 0.0;
  MiTerms terms;
};

// Primary user's secrecy capacity when the secondary stays silent.
double baseline_secrecy_rate(const Scenario& sc);

// Smallest listening fraction allowing the secondary transmitter to decode
// the primary codeword.  Throws infeasible_error when |ctt| <= |c11|.
double eta1_min(const Scenario& sc);

// Secondary rate with dirty-paper coding, plus the reliability/secrecy
// residuals that certify secure coexistence.
RateReport dpc_rate(const Scenario& sc, const SchemeParams& p);

// Secondary rate without DPC; the primary signal enters the denominator as
// interference and the secrecy condition is an inequality.
RateReport no_dpc_rate(const Scenario& sc, const SchemeParams& p);

// Scheme without the clean-relaying phase: eta3 forced to 0.
RateReport single_phase_rate(const Scenario& sc, const SchemeParams& p, bool use_dpc = true);

// Primary secrecy contributions of the tail phases when relaying and
// jamming are transmitted separately (r1_split: pure relay then pure jam)
// versus mixed in a single phase (r1_mixed).  The two configurations share
// the same time and energy budget:
//   eta3p + eta4 = eta3 and eta3p*p2_3p + eta4*p2_4 = eta3*p2_3.
struct SplitPhaseRates {
  double r1_split = 0.0;  // separate relay and jamming phases
  double r1_mixed = 0.0;  // single phase carrying both
};
SplitPhaseRates split_phase_primary_rates(const Scenario& sc, double eta3p, double eta4,
                                          double p2_3p, double p2_4, double rho3, double p2_3);

// Weighted-average secrecy-rate combiner used by every multi-phase formula:
// sum_k eta_k * (I(U;Y1)_k - I(U;Y2)_k).
double phase_averaged_secrecy_rate(const std::array<std::pair<double, double>, 3>& mi_pairs,
                                   const std::array<double, 3>& fractions);

}  // namespace secrelay
