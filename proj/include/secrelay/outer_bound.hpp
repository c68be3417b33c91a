#pragma once

#include <cstdint>
#include <vector>

#include "secrelay/channel.hpp"
#include "secrelay/common.hpp"

namespace secrelay {

// Free parameters of the AWGN capacity outer bound: five scalars on [0,1]
// and a correlation coefficient on the unit disc.  Distinct from the
// scheme's gamma/eta, which live in SchemeParams.
struct OuterBoundParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double gamma = 0.0;
  cplx rho{0.0, 0.0};

  void validate() const;
};

struct BoundPoint {
  double r_s1_ub = 0.0;
  double r2_ub = 0.0;
  OuterBoundParams params;
};

// Evaluates the outer-bound rate pair at one parameter point.
BoundPoint awgn_outer_point(const StandardizedChannel& std_ch, const OuterBoundParams& bp);

struct R2OuterConfig {
  double match_tol = 1e-3;  // width of the target-matching band
  int samples = 20000;      // quasi-random samples over the parameter box
  int refine_top = 10;      // candidates polished by coordinate search
  int refine_rounds = 4;    // coordinate sweeps per candidate
  uint64_t seed = 0;        // shifts the quasi-random sequence
  bool complex_rho = false; // default: rho real in [-1,1]
  bool at_least = false;    // relax membership to r_s1_ub >= target
  int threads = 0;
};

struct R2OuterResult {
  bool feasible = false;
  double r2_ub = 0.0;
  BoundPoint best;
  int matched = 0;  // samples inside the target band before refinement
  // set when the channel contradicts the degraded-eavesdropper hypothesis
  // (|b| >= 1); the bound is still evaluated, only flagged
  bool degradedness_flag = false;
};

// Outer bound on the secondary rate given the primary's target secrecy
// rate: max of r2_ub over sampled parameters whose r_s1_ub matches the
// target, then local refinement.  Deterministic for a fixed seed.
R2OuterResult r2_outer(const StandardizedChannel& std_ch, double rs1_target,
                       const R2OuterConfig& cfg = {});

// The bound assumes the secondary transmitter knows the primary message
// from the start; scaling by the achievable listening overhead makes it
// comparable to the lower bound.
double scale_ub(double r2_ub, double eta1_star);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Least-squares fit of values against log2(p2).
SlopeFit fit_slope_log2(const std::vector<double>& p2, const std::vector<double>& values);

// High-power slope of the outer bound for a gains/p1 family evaluated on a
// p2 grid spanning at least four decades.
double dof_ub(const ChannelGains& gains, double p1, const std::vector<double>& p2_grid,
              double rs1_target, const R2OuterConfig& cfg = {});

// Same slope estimate for an arbitrary per-p2 lower-bound evaluator.
template <typename F>
double dof_lb(F&& lb_of_p2, const std::vector<double>& p2_grid) {
  if (p2_grid.size() < 2) throw std::invalid_argument("dof: need at least two p2 points");
  double lo = p2_grid.front(), hi = p2_grid.front();
  for (double p : p2_grid) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (lo <= 0.0 || hi / lo < 1e4)
    throw std::invalid_argument("dof: p2 grid must span at least four decades");
  std::vector<double> vals;
  vals.reserve(p2_grid.size());
  for (double p : p2_grid) vals.push_back(lb_of_p2(p));
  return fit_slope_log2(p2_grid, vals).slope;
}

}  // namespace secrelay
