#include "secrelay/awgn.hpp"

#include <cmath>

namespace secrelay {

SchemeParams SchemeParams::make(double eta1, double eta2, double rho2, double rho3, double gamma,
                                double p2_2, double p2_3) {
  if (!(eta1 > 0.0 && eta1 < 1.0)) throw std::domain_error("params: eta1 must lie in (0,1)");
  if (eta2 < 0.0) throw std::domain_error("params: eta2 must be >= 0");
  double eta3 = 1.0 - eta1 - eta2;
  if (eta3 < -1e-9) throw std::domain_error("params: eta1 + eta2 exceeds 1");
  if (eta3 < 0.0) eta3 = 0.0;
  if (rho2 < 0.0 || rho2 >= 1.0) throw std::domain_error("params: rho2 must lie in [0,1)");
  if (rho3 < 0.0 || rho3 > 1.0) throw std::domain_error("params: rho3 must lie in [0,1]");
  if (gamma < 0.0 || gamma > 1.0) throw std::domain_error("params: gamma must lie in [0,1]");
  if (p2_2 < 0.0 || p2_3 < 0.0) throw std::domain_error("params: phase powers must be >= 0");
  SchemeParams p;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.eta3 = eta3;
  p.rho2 = rho2;
  p.rho3 = rho3;
  p.gamma = gamma;
  p.p2_2 = p2_2;
  p.p2_3 = p2_3;
  return p;
}

Scenario Scenario::make(const ChannelGains& gains, double p1, double p2,
                        std::optional<double> rs1_override) {
  if (p1 <= 0.0) throw std::domain_error("scenario: p1 must be > 0");
  if (p2 < 0.0) throw std::domain_error("scenario: p2 must be >= 0");
  Scenario sc;
  sc.gains = gains;
  sc.p1 = p1;
  sc.p2 = p2;
  if (rs1_override) {
    if (*rs1_override < 0.0) throw std::domain_error("scenario: rs1 target must be >= 0");
    sc.rs1_target = *rs1_override;
  } else {
    sc.rs1_target = baseline_secrecy_rate(sc);
  }
  return sc;
}

double baseline_secrecy_rate(const Scenario& sc) {
  return pos(cap(std::norm(sc.gains.c11) * sc.p1) - cap(std::norm(sc.gains.c12) * sc.p1));
}

double eta1_min(const Scenario& sc) {
  if (!sc.gains.decodable())
    throw infeasible_error(
        "decodability constraint |c_TT| > |c_11| violated: the secondary transmitter "
        "cannot decode the primary message");
  return cap(std::norm(sc.gains.c11) * sc.p1) / cap(std::norm(sc.gains.ctt) * sc.p1);
}

namespace {

// quantities shared by the DPC and no-DPC evaluators
struct PhaseQuantities {
  double c21sq, c22sq;
  double pu2;              // secondary-message power in phase 2
  double interference2;    // rho2*p2_2 + pu2, total non-relay power in phase 2
  EquivalentChannels eq;
};

PhaseQuantities phase_quantities(const Scenario& sc, const SchemeParams& p) {
  PhaseQuantities q;
  q.c21sq = std::norm(sc.gains.c21);
  q.c22sq = std::norm(sc.gains.c22);
  q.pu2 = (1.0 - p.rho2) * (1.0 - p.gamma) * p.p2_2;
  q.interference2 = p.rho2 * p.p2_2 + q.pu2;
  q.eq = equivalent_channels(sc.gains, p, sc.p1);
  return q;
}

}  // namespace

RateReport dpc_rate(const Scenario& sc, const SchemeParams& p) {
  const auto q = phase_quantities(sc, p);
  const double c11sq = std::norm(sc.gains.c11);
  const double c12sq = std::norm(sc.gains.c12);

  RateReport rep;
  rep.decodable = sc.gains.decodable();

  MiTerms& t = rep.terms;
  t.i_v1_y1_p1 = cap(c11sq * sc.p1);
  t.i_v1_y2_p1 = cap(c12sq * sc.p1);
  t.i_v1_y1_p2 = cap(std::norm(q.eq.c11_p2) * sc.p1 / (1.0 + q.c21sq * q.interference2));
  t.i_v1_v2y2_p2 = cap(std::norm(q.eq.c12_p2) * sc.p1 / (1.0 + q.c22sq * q.interference2));
  t.mmse_alpha = q.pu2 > 0.0 ? q.c22sq * q.pu2 / (1.0 + q.c22sq * (q.pu2 + p.rho2 * p.p2_2)) : 0.0;
  t.i_v1_v2 = q.pu2 > 0.0 ? std::log2(1.0 + t.mmse_alpha * t.mmse_alpha * sc.p1 / q.pu2) : 0.0;
  t.i_v1_y2_p2_given_v2 = t.i_v1_v2y2_p2 - t.i_v1_v2;
  t.i_v1_y1_p3 = cap(std::norm(q.eq.c11_p3) * sc.p1 / (1.0 + q.c21sq * p.rho3 * p.p2_3));
  t.i_v1_y2_p3 = cap(std::norm(q.eq.c12_p3) * sc.p1 / (1.0 + q.c22sq * p.rho3 * p.p2_3));

  const double r2_per_use = cap(q.c22sq * q.pu2 / (1.0 + q.c22sq * p.rho2 * p.p2_2));
  t.i_v2_y2_p2 = r2_per_use + t.i_v1_v2;
  rep.r2 = p.eta2 * r2_per_use;

  const double tail = 1.0 - p.eta1;
  rep.residual_reliability =
      p.eta2 * t.i_v1_y1_p2 + p.eta3 * t.i_v1_y1_p3 - tail * t.i_v1_y1_p1;
  rep.residual_secrecy =
      p.eta2 * t.i_v1_v2y2_p2 + p.eta3 * t.i_v1_y2_p3 - tail * t.i_v1_y2_p1;

  rep.feasible = rep.decodable && p.within_power(sc.p2) &&
                 rep.residual_reliability >= -kReliabilityTol &&
                 std::abs(rep.residual_secrecy) <= kSecrecyTol;
  return rep;
}

RateReport no_dpc_rate(const Scenario& sc, const SchemeParams& p) {
  const auto q = phase_quantities(sc, p);

  RateReport rep;
  rep.decodable = sc.gains.decodable();

  MiTerms& t = rep.terms;
  t.i_v1_y1_p1 = cap(std::norm(sc.gains.c11) * sc.p1);
  t.i_v1_y2_p1 = cap(std::norm(sc.gains.c12) * sc.p1);
  t.i_v1_y1_p2 = cap(std::norm(q.eq.c11_p2) * sc.p1 / (1.0 + q.c21sq * q.interference2));
  // without precoding the phase-2 leak term sees only the jamming noise
  t.i_v1_v2y2_p2 = cap(std::norm(q.eq.c12_p2) * sc.p1 / (1.0 + q.c22sq * p.rho2 * p.p2_2));
  t.i_v1_y2_p2_given_v2 = t.i_v1_v2y2_p2;
  t.i_v1_v2 = 0.0;
  t.mmse_alpha = 0.0;
  t.i_v1_y1_p3 = cap(std::norm(q.eq.c11_p3) * sc.p1 / (1.0 + q.c21sq * p.rho3 * p.p2_3));
  t.i_v1_y2_p3 = cap(std::norm(q.eq.c12_p3) * sc.p1 / (1.0 + q.c22sq * p.rho3 * p.p2_3));

  const double r2_per_use =
      cap(q.c22sq * q.pu2 /
          (1.0 + q.c22sq * p.rho2 * p.p2_2 + std::norm(q.eq.c12_p2) * sc.p1));
  t.i_v2_y2_p2 = r2_per_use;
  rep.r2 = p.eta2 * r2_per_use;

  const double secrecy_lhs = pos(p.eta2 * (t.i_v1_y1_p2 - t.i_v1_v2y2_p2) +
                                 p.eta3 * (t.i_v1_y1_p3 - t.i_v1_y2_p3));
  rep.residual_secrecy = secrecy_lhs - (1.0 - p.eta1) * sc.rs1_target;
  // the secrecy-capacity condition above subsumes reliable decoding
  rep.residual_reliability = 0.0;

  rep.feasible = rep.decodable && p.within_power(sc.p2) &&
                 rep.residual_secrecy >= -kSecrecyTol;
  return rep;
}

RateReport single_phase_rate(const Scenario& sc, const SchemeParams& p, bool use_dpc) {
  SchemeParams sp = p;
  sp.eta2 = 1.0 - p.eta1;
  sp.eta3 = 0.0;
  sp.rho3 = 0.0;
  sp.p2_3 = 0.0;
  return use_dpc ? dpc_rate(sc, sp) : no_dpc_rate(sc, sp);
}

SplitPhaseRates split_phase_primary_rates(const Scenario& sc, double eta3p, double eta4,
                                          double p2_3p, double p2_4, double rho3, double p2_3) {
  if (eta3p < 0.0 || eta4 < 0.0)
    throw std::invalid_argument("split phases: fractions must be >= 0");
  if (rho3 < 0.0 || rho3 > 1.0) throw std::invalid_argument("split phases: rho3 outside [0,1]");
  if (p2_3p < 0.0 || p2_4 < 0.0 || p2_3 < 0.0)
    throw std::invalid_argument("split phases: powers must be >= 0");
  const double eta3 = eta3p + eta4;
  if (std::abs(eta3p * p2_3p + eta4 * p2_4 - eta3 * p2_3) > 1e-9)
    throw std::invalid_argument("split phases: energy budgets of the two configurations differ");

  const ChannelGains& g = sc.gains;
  const cplx rot = std::exp(cplx{0.0, -g.phi21()});
  const double c11sq = std::norm(g.c11);
  const double c12sq = std::norm(g.c12);
  const double c21sq = std::norm(g.c21);
  const double c22sq = std::norm(g.c22);
  auto relay_gain = [&](const cplx& direct, const cplx& relay, double rho, double power) {
    return direct + relay * rot * std::sqrt((1.0 - rho) * power / sc.p1);
  };

  SplitPhaseRates out;
  if (eta3p > 0.0) {
    const cplx c11r = relay_gain(g.c11, g.c21, 0.0, p2_3p);
    const cplx c12r = relay_gain(g.c12, g.c22, 0.0, p2_3p);
    out.r1_split += eta3p * (cap(std::norm(c11r) * sc.p1) - cap(std::norm(c12r) * sc.p1));
  }
  if (eta4 > 0.0) {
    out.r1_split += eta4 * (cap(c11sq * sc.p1 / (1.0 + c21sq * p2_4)) -
                            cap(c12sq * sc.p1 / (1.0 + c22sq * p2_4)));
  }
  if (eta3 > 0.0) {
    const cplx c11m = relay_gain(g.c11, g.c21, rho3, p2_3);
    const cplx c12m = relay_gain(g.c12, g.c22, rho3, p2_3);
    out.r1_mixed = eta3 * (cap(std::norm(c11m) * sc.p1 / (1.0 + c21sq * rho3 * p2_3)) -
                           cap(std::norm(c12m) * sc.p1 / (1.0 + c22sq * rho3 * p2_3)));
  }
  return out;
}

double phase_averaged_secrecy_rate(const std::array<std::pair<double, double>, 3>& mi_pairs,
                                   const std::array<double, 3>& fractions) {
  double sum = 0.0;
  for (double f : fractions) {
    if (f < 0.0) throw std::invalid_argument("phase fractions must be >= 0");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("phase fractions must sum to 1");
  double rate = 0.0;
  for (int k = 0; k < 3; ++k)
    rate += fractions[k] * (mi_pairs[k].first - mi_pairs[k].second);
  return rate;
}

}  // namespace secrelay
