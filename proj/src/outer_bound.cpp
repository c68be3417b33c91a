#include "secrelay/outer_bound.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "secrelay/parallel.hpp"

namespace secrelay {

void OuterBoundParams::validate() const {
  auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(in01(alpha) && in01(beta) && in01(delta) && in01(eta) && in01(gamma)))
    throw std::domain_error("outer bound params: alpha..gamma must lie in [0,1]");
  if (std::abs(rho) > 1.0 + 1e-12)
    throw std::domain_error("outer bound params: |rho| must be <= 1");
}

BoundPoint awgn_outer_point(const StandardizedChannel& std_ch, const OuterBoundParams& bp) {
  bp.validate();
  const double p1 = std_ch.p1_tilde, p2 = std_ch.p2_tilde;
  const double asq = std::norm(std_ch.a), bsq = std::norm(std_ch.b);
  const double cross = std::sqrt(p1 * p2);
  // received powers at the two sides for fully correlated inputs
  const double sa = p1 + asq * p2 + 2.0 * std::real(std_ch.a * bp.rho) * cross;
  const double sb = bsq * p1 + p2 + 2.0 * std::real(std_ch.b * bp.rho) * cross;

  const double rate_cap = std::log2((1.0 + sa) / (1.0 + bp.alpha * sa));
  const double equivocation = std::log2((1.0 + bp.gamma * sa) / (1.0 + bp.beta * sb)) -
                              std::log2((1.0 + bp.eta * asq * p2) / (1.0 + bp.delta * p1));

  BoundPoint out;
  out.params = bp;
  out.r_s1_ub = std::min(rate_cap, pos(equivocation));

  const double direct = std::log2((1.0 + sb) / (1.0 + bp.beta * sb));
  const double sum_rate_penalty = pos(std::log2((1.0 + p1) / (1.0 + bsq * p2)) -
                                      std::log2((1.0 + bp.gamma * sa) / (1.0 + bp.eta * asq * p2)));
  out.r2_ub = pos(direct - sum_rate_penalty);
  return out;
}

namespace {

// Halton sequence: cheap quasi-random coverage of the parameter box.
double halton(uint64_t index, uint64_t base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(index % base);
    index /= base;
  }
  return r;
}

constexpr uint64_t kBases[7] = {2, 3, 5, 7, 11, 13, 17};

OuterBoundParams params_from_unit(const double* u, bool complex_rho) {
  OuterBoundParams bp;
  bp.alpha = u[0];
  bp.beta = u[1];
  bp.delta = u[2];
  bp.eta = u[3];
  bp.gamma = u[4];
  if (complex_rho) {
    const double mag = std::sqrt(u[5]);  // area-uniform on the disc
    const double ang = 2.0 * M_PI * u[6];
    bp.rho = cplx{mag * std::cos(ang), mag * std::sin(ang)};
  } else {
    bp.rho = cplx{2.0 * u[5] - 1.0, 0.0};
  }
  return bp;
}

struct Objective {
  const StandardizedChannel& ch;
  double target;
  double match_tol;
  bool at_least;

  bool matches(const BoundPoint& pt) const {
    return at_least ? pt.r_s1_ub >= target - match_tol
                    : std::abs(pt.r_s1_ub - target) <= match_tol;
  }
  // r2 with a hard penalty outside the matching band, used by refinement
  double penalized(const BoundPoint& pt) const {
    const double miss = at_least ? pos(target - match_tol - pt.r_s1_ub)
                                 : pos(std::abs(pt.r_s1_ub - target) - match_tol);
    return pt.r2_ub - 1e6 * miss;
  }
};

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

R2OuterResult r2_outer(const StandardizedChannel& std_ch, double rs1_target,
                       const R2OuterConfig& cfg) {
  if (rs1_target < 0.0) throw std::invalid_argument("r2_outer: negative target");
  R2OuterResult res;
  res.degradedness_flag = std::abs(std_ch.b) >= 1.0;
  const Objective obj{std_ch, rs1_target, cfg.match_tol, cfg.at_least};

  const int dims = cfg.complex_rho ? 7 : 6;
  struct Candidate {
    double score = -1e300;
    BoundPoint pt;
    uint64_t order = 0;
  };
  std::vector<Candidate> matched;
  std::mutex mu;
  std::atomic<int> n_matched{0};

  const uint64_t offset = cfg.seed * 7919ULL;
  parallel_for(static_cast<std::size_t>(cfg.samples), cfg.threads, [&](std::size_t i) {
    double u[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int d = 0; d < dims; ++d) u[d] = halton(offset + 1 + i, kBases[d]);
    const OuterBoundParams bp = params_from_unit(u, cfg.complex_rho);
    const BoundPoint pt = awgn_outer_point(std_ch, bp);
    if (!obj.matches(pt)) return;
    n_matched.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard<std::mutex> lock(mu);
    matched.push_back({pt.r2_ub, pt, static_cast<uint64_t>(i)});
  });
  res.matched = n_matched.load();
  if (matched.empty()) return res;  // infeasible marker with diagnostics

  std::sort(matched.begin(), matched.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.order < b.order;
  });
  matched.resize(std::min<std::size_t>(matched.size(), static_cast<std::size_t>(cfg.refine_top)));

  // coordinate-wise golden-section polish of the best candidates
  Candidate best = matched.front();
  for (auto& cand : matched) {
    OuterBoundParams cur = cand.pt.params;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
      for (int coord = 0; coord < dims; ++coord) {
        auto eval_at = [&](double v) {
          OuterBoundParams bp = cur;
          switch (coord) {
            case 0: bp.alpha = v; break;
            case 1: bp.beta = v; break;
            case 2: bp.delta = v; break;
            case 3: bp.eta = v; break;
            case 4: bp.gamma = v; break;
            case 5:
              if (cfg.complex_rho)
                bp.rho = std::abs(bp.rho) == 0.0
                             ? cplx{v, 0.0}
                             : bp.rho / std::abs(bp.rho) * v;  // radial move
              else
                bp.rho = cplx{v, 0.0};
              break;
            case 6: {
              const double mag = std::abs(bp.rho);
              bp.rho = cplx{mag * std::cos(v), mag * std::sin(v)};
              break;
            }
          }
          return obj.penalized(awgn_outer_point(std_ch, bp));
        };
        double lo = 0.0, hi = 1.0;
        if (coord == 5) {
          lo = cfg.complex_rho ? 0.0 : -1.0;
          hi = 1.0;
        } else if (coord == 6) {
          lo = 0.0;
          hi = 2.0 * M_PI;
        }
        const double v = golden_max(eval_at, lo, hi, 48);
        OuterBoundParams bp = cur;
        // accept the move only when it does not lose ground
        const double before = obj.penalized(awgn_outer_point(std_ch, cur));
        switch (coord) {
          case 0: bp.alpha = v; break;
          case 1: bp.beta = v; break;
          case 2: bp.delta = v; break;
          case 3: bp.eta = v; break;
          case 4: bp.gamma = v; break;
          case 5:
            if (cfg.complex_rho)
              bp.rho = std::abs(cur.rho) == 0.0 ? cplx{v, 0.0}
                                                : cur.rho / std::abs(cur.rho) * v;
            else
              bp.rho = cplx{v, 0.0};
            break;
          case 6: {
            const double mag = std::abs(cur.rho);
            bp.rho = cplx{mag * std::cos(v), mag * std::sin(v)};
            break;
          }
        }
        if (obj.penalized(awgn_outer_point(std_ch, bp)) >= before) cur = bp;
      }
    }
    const BoundPoint refined = awgn_outer_point(std_ch, cur);
    if (obj.matches(refined) && refined.r2_ub > best.score) {
      best = {refined.r2_ub, refined, cand.order};
    }
  }

  res.feasible = true;
  res.r2_ub = best.pt.r2_ub;
  res.best = best.pt;
  return res;
}

double scale_ub(double r2_ub, double eta1_star) {
  if (!(eta1_star > 0.0 && eta1_star < 1.0))
    throw std::domain_error("scale_ub: eta1* must lie in (0,1)");
  return (1.0 - eta1_star) * r2_ub;
}

SlopeFit fit_slope_log2(const std::vector<double>& p2, const std::vector<double>& values) {
  if (p2.size() != values.size() || p2.size() < 2)
    throw std::invalid_argument("slope fit: need matching vectors of length >= 2");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(p2.size());
  for (std::size_t i = 0; i < p2.size(); ++i) {
    if (p2[i] <= 0.0) throw std::invalid_argument("slope fit: p2 must be positive");
    const double x = std::log2(p2[i]);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-12) throw std::invalid_argument("slope fit: degenerate p2 grid");
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

double dof_ub(const ChannelGains& gains, double p1, const std::vector<double>& p2_grid,
              double rs1_target, const R2OuterConfig& cfg) {
  return dof_lb(
      [&](double p2) {
        const StandardizedChannel std_ch = standardize(gains, p1, p2);
        const R2OuterResult r = r2_outer(std_ch, rs1_target, cfg);
        if (!r.feasible)
          throw infeasible_error("dof_ub: no parameters match the target at p2 = " +
                                 std::to_string(p2));
        return r.r2_ub;
      },
      p2_grid);
}

}  // namespace secrelay
