#include "secrelay/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "secrelay/parallel.hpp"
#include "secrelay/rng.hpp"

namespace secrelay {

const char* scheme_name(SchemeType s) {
  switch (s) {
    case SchemeType::dpc_3phase: return "dpc_3phase";
    case SchemeType::nodpc_3phase: return "nodpc_3phase";
    case SchemeType::dpc_single: return "dpc_single";
    case SchemeType::nodpc_single: return "nodpc_single";
  }
  return "?";
}

bool scheme_uses_dpc(SchemeType s) {
  return s == SchemeType::dpc_3phase || s == SchemeType::dpc_single;
}

bool scheme_single_phase(SchemeType s) {
  return s == SchemeType::dpc_single || s == SchemeType::nodpc_single;
}

namespace {

constexpr double kRho2Max = 1.0 - 1e-9;  // rho2 lives in [0,1)
constexpr int kGammaScan = 200;

RateReport evaluate(const Scenario& sc, SchemeType scheme, const SchemeParams& p) {
  return scheme_uses_dpc(scheme) ? dpc_rate(sc, p) : no_dpc_rate(sc, p);
}

double secrecy_residual_at(const Scenario& sc, SchemeType scheme, SchemeParams p, double gamma) {
  p.gamma = gamma;
  return evaluate(sc, scheme, p).residual_secrecy;
}

}  // namespace

std::optional<double> resolve_gamma(const Scenario& sc, SchemeType scheme,
                                    const SchemeParams& partial) {
  auto residual = [&](double g) { return secrecy_residual_at(sc, scheme, partial, g); };

  if (!scheme_uses_dpc(scheme)) {
    // inequality constraint: smallest gamma with nonnegative residual wins,
    // since the secondary rate strictly decreases in gamma
    if (residual(0.0) >= -1e-12) return 0.0;
    double prev = 0.0;
    double fprev = residual(prev);
    for (int k = 1; k <= kGammaScan; ++k) {
      const double g = static_cast<double>(k) / kGammaScan;
      const double f = residual(g);
      if (f >= 0.0) {
        double lo = prev, hi = g;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (residual(mid) >= 0.0)
            hi = mid;
          else
            lo = mid;
        }
        return hi;
      }
      prev = g;
      fprev = f;
    }
    (void)fprev;
    return std::nullopt;
  }

  // DPC: the leak equality must hold exactly
  const double f0 = residual(0.0);
  if (std::abs(f0) <= 1e-9) return 0.0;
  double prev = 0.0, fprev = f0;
  for (int k = 1; k <= kGammaScan; ++k) {
    const double g = static_cast<double>(k) / kGammaScan;
    const double f = residual(g);
    if (std::abs(f) <= 1e-9) return g;
    if (fprev * f < 0.0) {
      double lo = prev, hi = g, flo = fprev;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = residual(mid);
        if (std::abs(fm) <= 1e-12) return mid;
        if (flo * fm <= 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      const double mid = 0.5 * (lo + hi);
      return std::abs(residual(mid)) <= 1e-8 ? std::optional<double>(mid) : std::nullopt;
    }
    prev = g;
    fprev = f;
  }
  return std::nullopt;
}

namespace {

// Search coordinates, all normalized to [0,1]:
//   0: eta2 share of the tail 1-eta1
//   1: rho2, 2: rho3
//   3: share of the power budget spent in phase 2
//   4: share of the remaining budget spent in phase 3
struct ParamSpace {
  const OptProblem& prob;
  double eta1;
  std::vector<int> free_coords;

  explicit ParamSpace(const OptProblem& p, double eta1_val) : prob(p), eta1(eta1_val) {
    const bool single = scheme_single_phase(p.scheme);
    if (!single && !p.fix_eta2) free_coords.push_back(0);
    if (!p.fix_rho2) free_coords.push_back(1);
    if (!single && !p.fix_rho3) free_coords.push_back(2);
    if (!p.fix_p2_2) free_coords.push_back(3);
    if (!single && !p.fix_p2_3) free_coords.push_back(4);
  }

  std::size_t dims() const { return free_coords.size(); }

  // z holds all 5 coordinates; fixed ones are ignored
  std::optional<SchemeParams> build(const std::array<double, 5>& z) const {
    const double tail = 1.0 - eta1;
    double eta2;
    if (scheme_single_phase(prob.scheme))
      eta2 = tail;
    else if (prob.fix_eta2)
      eta2 = *prob.fix_eta2;
    else
      eta2 = z[0] * tail;
    if (eta2 < 0.0 || eta2 > tail + 1e-12) return std::nullopt;
    eta2 = std::min(eta2, tail);
    const double eta3 = tail - eta2;

    const double rho2 = prob.fix_rho2 ? *prob.fix_rho2 : std::min(z[1], kRho2Max);
    double rho3 = prob.fix_rho3 ? *prob.fix_rho3 : z[2];
    if (scheme_single_phase(prob.scheme) && !prob.fix_rho3) rho3 = 0.0;

    const double budget = prob.scenario.p2;
    double p2_2, p2_3;
    if (prob.fix_p2_2 && prob.fix_p2_3) {
      p2_2 = *prob.fix_p2_2;
      p2_3 = *prob.fix_p2_3;
    } else if (prob.fix_p2_3) {
      p2_3 = *prob.fix_p2_3;
      const double avail = budget - eta3 * p2_3;
      if (avail < -1e-9) return std::nullopt;
      p2_2 = eta2 > 0.0 ? z[3] * std::max(avail, 0.0) / eta2 : 0.0;
    } else if (prob.fix_p2_2) {
      p2_2 = *prob.fix_p2_2;
      const double avail = budget - eta2 * p2_2;
      if (avail < -1e-9) return std::nullopt;
      p2_3 = eta3 > 0.0 ? z[4] * std::max(avail, 0.0) / eta3 : 0.0;
    } else {
      const double e2 = z[3] * budget;
      p2_2 = eta2 > 0.0 ? e2 / eta2 : 0.0;
      const double avail = budget - (eta2 > 0.0 ? e2 : 0.0);
      p2_3 = eta3 > 0.0 ? z[4] * avail / eta3 : 0.0;
    }
    if (scheme_single_phase(prob.scheme)) p2_3 = 0.0;

    SchemeParams out;
    out.eta1 = eta1;
    out.eta2 = eta2;
    out.eta3 = eta3;
    out.rho2 = rho2;
    out.rho3 = rho3;
    out.gamma = 0.0;
    out.p2_2 = p2_2;
    out.p2_3 = p2_3;
    if (!out.within_power(prob.scenario.p2)) return std::nullopt;
    return out;
  }

  // best-effort inverse used to seed warm starts
  std::array<double, 5> project(const SchemeParams& p) const {
    std::array<double, 5> z{0.5, 0.5, 0.5, 0.5, 0.5};
    const double tail = 1.0 - eta1;
    z[0] = tail > 0.0 ? std::clamp(p.eta2 / tail, 0.0, 1.0) : 0.0;
    z[1] = std::clamp(p.rho2, 0.0, kRho2Max);
    z[2] = std::clamp(p.rho3, 0.0, 1.0);
    const double budget = prob.scenario.p2;
    if (budget > 0.0) {
      const double e2 = std::clamp(p.eta2 * p.p2_2, 0.0, budget);
      z[3] = e2 / budget;
      const double avail = budget - e2;
      z[4] = avail > 0.0 ? std::clamp(p.eta3 * p.p2_3 / avail, 0.0, 1.0) : 0.0;
    } else {
      z[3] = z[4] = 0.0;
    }
    return z;
  }
};

struct Evaluation {
  bool feasible = false;
  double r2 = -1.0;
  SchemeParams params;
  RateReport report;
};

Evaluation evaluate_point(const OptProblem& prob, const ParamSpace& space,
                          const std::array<double, 5>& z) {
  Evaluation ev;
  auto params = space.build(z);
  if (!params) return ev;
  auto gamma = resolve_gamma(prob.scenario, prob.scheme, *params);
  if (!gamma) return ev;
  params->gamma = *gamma;
  const RateReport rep = evaluate(prob.scenario, prob.scheme, *params);
  if (!rep.feasible) return ev;
  ev.feasible = true;
  ev.r2 = rep.r2;
  ev.params = *params;
  ev.report = rep;
  return ev;
}

bool lex_smaller(const SchemeParams& a, const SchemeParams& b) {
  if (a.eta2 != b.eta2) return a.eta2 < b.eta2;
  if (a.rho2 != b.rho2) return a.rho2 < b.rho2;
  if (a.rho3 != b.rho3) return a.rho3 < b.rho3;
  return a.gamma < b.gamma;
}

// true when a beats b
bool better(const Evaluation& a, const Evaluation& b) {
  if (!a.feasible) return false;
  if (!b.feasible) return true;
  if (a.r2 > b.r2 + 1e-12) return true;
  if (b.r2 > a.r2 + 1e-12) return false;
  return lex_smaller(a.params, b.params);
}

Evaluation pattern_search(const OptProblem& prob, const ParamSpace& space,
                          std::array<double, 5> z, int eval_budget) {
  int evals = 0;
  auto eval = [&](const std::array<double, 5>& pt) {
    ++evals;
    return evaluate_point(prob, space, pt);
  };
  Evaluation best = eval(z);
  double step = 0.25;
  while (evals < eval_budget && step > prob.budget.step_tol) {
    Evaluation round_best = best;
    std::array<double, 5> round_z = z;
    bool improved = false;
    for (int ci : space.free_coords) {
      for (double dir : {+1.0, -1.0}) {
        if (evals >= eval_budget) break;
        std::array<double, 5> cand = z;
        cand[static_cast<std::size_t>(ci)] =
            std::clamp(cand[static_cast<std::size_t>(ci)] + dir * step, 0.0, 1.0);
        const Evaluation ev = eval(cand);
        if (better(ev, round_best)) {
          round_best = ev;
          round_z = cand;
          improved = true;
        }
      }
    }
    if (improved) {
      best = round_best;
      z = round_z;
    } else {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace

OptResult solve(const OptProblem& prob) {
  OptResult res;
  if (!prob.scenario.gains.decodable()) {
    res.status = OptStatus::no_feasible_point;
    res.message =
        "decodability constraint |c_TT| > |c_11| violated: no listening fraction lets the "
        "secondary transmitter decode the primary message";
    return res;
  }
  const double eta1 = eta1_min(prob.scenario);
  const ParamSpace space(prob, eta1);

  // deterministic starts: box center and the corners that matter in
  // practice (no clean-relay phase, no jamming, full phase-2 power)
  std::vector<std::array<double, 5>> starts;
  starts.push_back({0.5, 0.5, 0.5, 0.5, 0.5});
  starts.push_back({1.0, 0.0, 0.0, 1.0, 0.0});
  starts.push_back({0.5, 0.0, 0.0, 0.5, 0.5});
  starts.push_back({0.75, 0.0, 0.0, 1.0, 1.0});
  starts.push_back({1.0, 0.5, 0.0, 1.0, 0.0});
  for (const auto& w : prob.warm_starts) starts.push_back(space.project(w));
  const int n_random = std::max(0, prob.budget.starts - static_cast<int>(starts.size()));
  for (int i = 0; i < n_random; ++i) {
    Rng rng(stream_seed(prob.seed, static_cast<uint64_t>(i)));
    std::array<double, 5> z;
    for (auto& v : z) v = rng.next_double();
    starts.push_back(z);
  }

  std::vector<Evaluation> results(starts.size());
  parallel_for(starts.size(), prob.threads, [&](std::size_t i) {
    results[i] = pattern_search(prob, space, starts[i], prob.budget.evals_per_start);
  });

  Evaluation best;
  res.trace.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& ev = results[i];
    res.trace.push_back({static_cast<int>(i), ev.feasible, ev.feasible ? ev.r2 : 0.0, ev.params});
    if (better(ev, best)) best = ev;
  }

  if (!best.feasible) {
    res.status = OptStatus::no_feasible_point;
    res.message = "no feasible parameter point found within the search budget";
    return res;
  }
  res.status = OptStatus::feasible_opt;
  res.best = best.params;
  res.report = best.report;
  return res;
}

std::pair<double, double> compare_relay_jam_split(const Scenario& sc, double eta2, double p2_3,
                                                  int grid) {
  const double eta1 = eta1_min(sc);
  const double eta3 = 1.0 - eta1 - eta2;
  if (eta3 <= 1e-12) return {0.0, 0.0};
  if (p2_3 < 0.0) throw std::invalid_argument("compare_relay_jam_split: negative power");
  const double energy = eta3 * p2_3;

  // mixed phase: one free variable, the jamming fraction
  auto mixed_at = [&](double rho3) {
    return split_phase_primary_rates(sc, eta3, 0.0, p2_3, 0.0, rho3, p2_3).r1_mixed;
  };
  double best_mixed = -1e300, best_rho = 0.0;
  for (int k = 0; k < grid; ++k) {
    const double rho3 = static_cast<double>(k) / (grid - 1);
    const double v = mixed_at(rho3);
    if (v > best_mixed) {
      best_mixed = v;
      best_rho = rho3;
    }
  }
  {  // local polish around the grid winner
    const double w = 1.0 / (grid - 1);
    double lo = std::max(0.0, best_rho - w), hi = std::min(1.0, best_rho + w);
    for (int it = 0; it < 60; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (mixed_at(m1) < mixed_at(m2))
        lo = m1;
      else
        hi = m2;
    }
    best_mixed = std::max(best_mixed, mixed_at(0.5 * (lo + hi)));
  }

  // split configuration: relay-phase share of time and of energy
  auto split_at = [&](double t, double w) {
    const double eta3p = t * eta3;
    const double eta4 = eta3 - eta3p;
    double e3 = w * energy;
    double p_relay = 0.0, p_jam = 0.0;
    if (eta3p <= 0.0)
      e3 = 0.0;
    else
      p_relay = e3 / eta3p;
    if (eta4 <= 0.0) {
      if (energy - e3 > 1e-9 * std::max(1.0, energy)) return -1e300;  // stranded energy
      p_jam = 0.0;
      e3 = energy;
      p_relay = eta3p > 0.0 ? energy / eta3p : 0.0;
    } else {
      p_jam = (energy - e3) / eta4;
    }
    return split_phase_primary_rates(sc, eta3p, eta4, p_relay, p_jam, 0.0, p2_3).r1_split;
  };
  double best_split = -1e300, bt = 0.0, bw = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double t = static_cast<double>(i) / (grid - 1);
      const double w = static_cast<double>(j) / (grid - 1);
      const double v = split_at(t, w);
      if (v > best_split) {
        best_split = v;
        bt = t;
        bw = w;
      }
    }
  {  // coordinate-wise polish
    const double cell = 1.0 / (grid - 1);
    for (int round = 0; round < 4; ++round) {
      for (int coord = 0; coord < 2; ++coord) {
        double lo = std::max(0.0, (coord == 0 ? bt : bw) - cell);
        double hi = std::min(1.0, (coord == 0 ? bt : bw) + cell);
        for (int it = 0; it < 60; ++it) {
          const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
          const double f1 = coord == 0 ? split_at(m1, bw) : split_at(bt, m1);
          const double f2 = coord == 0 ? split_at(m2, bw) : split_at(bt, m2);
          if (f1 < f2)
            lo = m1;
          else
            hi = m2;
        }
        const double v = 0.5 * (lo + hi);
        double cand = coord == 0 ? split_at(v, bw) : split_at(bt, v);
        if (cand > best_split) {
          best_split = cand;
          (coord == 0 ? bt : bw) = v;
        }
      }
    }
  }
  return {best_mixed, best_split};
}

}  // namespace secrelay
