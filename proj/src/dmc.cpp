#include "secrelay/dmc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>

#include "secrelay/parallel.hpp"

namespace secrelay {

namespace {

const std::vector<std::string> kV1{"v1"};
const std::vector<std::string> kV2{"v2"};
const std::vector<std::string> kY1{"y1"};
const std::vector<std::string> kY2{"y2"};
const std::vector<std::string> kV2Y2{"v2", "y2"};

void expect(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("dmc scheme: ") + what);
}

}  // namespace

void DmcScheme::validate() const {
  expect(pmf_v1.names() == kV1, "pmf_v1 must be a marginal over v1");
  expect(v2_given_v1.given_names() == kV1 && v2_given_v1.target_names() == kV2,
         "v2_given_v1 must be {v2}|{v1}");
  expect(x1_given_v1.given_names() == kV1 && x1_given_v1.target_names() == std::vector<std::string>{"x1"},
         "x1_given_v1 must be {x1}|{v1}");
  expect(x2_given_v1v2.given_names() == std::vector<std::string>({"v1", "v2"}) &&
             x2_given_v1v2.target_names() == std::vector<std::string>{"x2"},
         "x2_given_v1v2 must be {x2}|{v1,v2}");
  expect(channel_with_t2.given_names() == std::vector<std::string>({"x1", "x2"}) &&
             channel_with_t2.target_names() == std::vector<std::string>({"y1", "y2"}),
         "channel_with_t2 must be {y1,y2}|{x1,x2}");
  expect(channel_without_t2.given_names() == std::vector<std::string>{"x1"} &&
             channel_without_t2.target_names() == std::vector<std::string>({"y1", "y2"}),
         "channel_without_t2 must be {y1,y2}|{x1}");
  expect(eta[0] > 0.0 && eta[0] < 1.0, "eta1 must lie in (0,1)");
  expect(eta[1] >= 0.0 && eta[2] >= 0.0, "eta2 and eta3 must be >= 0");
  expect(std::abs(eta[0] + eta[1] + eta[2] - 1.0) <= 1e-9, "phase fractions must sum to 1");
}

CondPmf DmcScheme::x2_given_v1_clean() const {
  return x2_given_v1v2.marginalize_given(v2_given_v1, "v2");
}

namespace {

// joint over (v1, x1, y1, y2) on the quiet channel
JointPmf quiet_joint(const DmcScheme& s) {
  return compose(compose(s.pmf_v1, s.x1_given_v1), s.channel_without_t2);
}

// joint over (v1, v2, x1, x2, y1, y2) in the transmit phase
JointPmf transmit_joint(const DmcScheme& s) {
  JointPmf p = compose(s.pmf_v1, s.v2_given_v1);
  p = compose(p, s.x2_given_v1v2);
  p = compose(p, s.x1_given_v1);
  return compose(p, s.channel_with_t2);
}

// joint over (v1, x1, x2, y1, y2) with a relay-only law x2|v1
JointPmf relay_joint(const DmcScheme& s, const CondPmf& x2_given_v1) {
  JointPmf p = compose(s.pmf_v1, x2_given_v1);
  p = compose(p, s.x1_given_v1);
  return compose(p, s.channel_with_t2);
}

struct PrimaryCode {
  double r_s1;
  double r_s1_prime;
};

PrimaryCode primary_code(const JointPmf& quiet) {
  const double leak = mutual_information(quiet, kV1, kY2);
  return {mutual_information(quiet, kV1, kY1) - leak, leak};
}

}  // namespace

DmcRateReport dmc_single_phase_rate(const DmcScheme& s) {
  s.validate();
  const JointPmf quiet = quiet_joint(s);
  const JointPmf with = transmit_joint(s);
  const PrimaryCode code = primary_code(quiet);

  DmcRateReport rep;
  rep.r_s1 = code.r_s1;
  rep.r_s1_prime = code.r_s1_prime;
  rep.r2 = mutual_information(with, kV2, kY2) - mutual_information(with, kV2, kV1);
  rep.reliability_slack = mutual_information(with, kV1, kY1) - code.r_s1_prime - code.r_s1;
  rep.secrecy_residual = mutual_information(with, kV1, kV2Y2) - code.r_s1_prime;
  return rep;
}

DmcRateReport dmc_three_phase_rate(const DmcScheme& s) {
  s.validate();
  const JointPmf quiet = quiet_joint(s);
  const JointPmf with = transmit_joint(s);
  const JointPmf clean = relay_joint(s, s.x2_given_v1_clean());
  const PrimaryCode code = primary_code(quiet);

  DmcRateReport rep;
  rep.r_s1 = code.r_s1;
  rep.r_s1_prime = code.r_s1_prime;
  rep.r2 = s.eta[1] * (mutual_information(with, kV2, kY2) - mutual_information(with, kV2, kV1));
  rep.reliability_slack = s.eta[0] * mutual_information(quiet, kV1, kY1) +
                          s.eta[1] * mutual_information(with, kV1, kY1) +
                          s.eta[2] * mutual_information(clean, kV1, kY1) -
                          (code.r_s1 + code.r_s1_prime);
  rep.secrecy_residual = s.eta[0] * mutual_information(quiet, kV1, kY2) +
                         s.eta[1] * mutual_information(with, kV1, kV2Y2) +
                         s.eta[2] * mutual_information(clean, kV1, kY2) - code.r_s1_prime;
  return rep;
}

DmcRateReport dmc_four_phase_rate(const DmcScheme& s, double eta3p, double eta4,
                                  const CondPmf& x2_phase3, const CondPmf& x2_phase4) {
  s.validate();
  if (eta3p < 0.0 || eta4 < 0.0 || std::abs(eta3p + eta4 - s.eta[2]) > 1e-9)
    throw std::invalid_argument("four-phase: tail fractions must be >= 0 and sum to eta3");
  const JointPmf quiet = quiet_joint(s);
  const JointPmf with = transmit_joint(s);
  const PrimaryCode code = primary_code(quiet);

  DmcRateReport rep;
  rep.r_s1 = code.r_s1;
  rep.r_s1_prime = code.r_s1_prime;
  rep.r2 = s.eta[1] * (mutual_information(with, kV2, kY2) - mutual_information(with, kV2, kV1));

  double main_sum = s.eta[0] * mutual_information(quiet, kV1, kY1) +
                    s.eta[1] * mutual_information(with, kV1, kY1);
  double leak_sum = s.eta[0] * mutual_information(quiet, kV1, kY2) +
                    s.eta[1] * mutual_information(with, kV1, kV2Y2);
  if (eta3p > 0.0) {
    const JointPmf ph3 = relay_joint(s, x2_phase3);
    main_sum += eta3p * mutual_information(ph3, kV1, kY1);
    leak_sum += eta3p * mutual_information(ph3, kV1, kY2);
  }
  if (eta4 > 0.0) {
    const JointPmf ph4 = relay_joint(s, x2_phase4);
    main_sum += eta4 * mutual_information(ph4, kV1, kY1);
    leak_sum += eta4 * mutual_information(ph4, kV1, kY2);
  }
  rep.reliability_slack = main_sum - (code.r_s1 + code.r_s1_prime);
  rep.secrecy_residual = leak_sum - code.r_s1_prime;
  return rep;
}

namespace {

// all compositions of `n` grid units into `parts` bins, as weights k/n
std::vector<std::vector<double>> simplex_grid(int parts, int n) {
  std::vector<std::vector<double>> rows;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      std::vector<double> w(cur.size());
      for (std::size_t i = 0; i < cur.size(); ++i)
        w[i] = static_cast<double>(cur[i]) / static_cast<double>(n);
      rows.push_back(std::move(w));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
  };
  rec(0, n);
  return rows;
}

// decode a flat assignment index into one grid row per conditioning cell
std::vector<double> assemble_rows(const std::vector<std::vector<double>>& grid,
                                  std::size_t assignment, std::size_t n_rows) {
  std::vector<double> table;
  for (std::size_t r = 0; r < n_rows; ++r) {
    const auto& row = grid[assignment % grid.size()];
    assignment /= grid.size();
    table.insert(table.end(), row.begin(), row.end());
  }
  return table;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  while (exp--) out *= base;
  return out;
}

}  // namespace

BruteForceResult brute_force_best_r2(const DmcFamily& family, const BruteForceConfig& cfg) {
  const int v1_card = family.pmf_v1.cards()[0];
  if (cfg.v2_card < 1 || cfg.v2_card > 4 || cfg.x2_card < 1 || cfg.x2_card > 4 || v1_card > 4)
    throw std::invalid_argument("brute force: alphabet sizes capped at 4");
  if (cfg.grid_step <= 0.0) throw std::invalid_argument("brute force: grid step must be > 0");
  if (cfg.search_x2 && cfg.grid_step < 0.05 - 1e-12)
    throw std::invalid_argument("brute force: grid step below 0.05 is intractable for the full search");
  if (!cfg.search_x2 && cfg.x2_card != cfg.v2_card)
    throw std::invalid_argument("brute force: x2 copies v2, cardinalities must match");

  const int n = static_cast<int>(std::lround(1.0 / cfg.grid_step));
  const auto v2_grid = simplex_grid(cfg.v2_card, n);
  const auto x2_grid = simplex_grid(cfg.x2_card, n);

  const std::size_t v2_rows = static_cast<std::size_t>(v1_card);
  const std::size_t x2_rows = static_cast<std::size_t>(v1_card) * cfg.v2_card;
  const std::size_t v2_count = ipow(v2_grid.size(), v2_rows);
  const std::size_t x2_count = cfg.search_x2 ? ipow(x2_grid.size(), x2_rows) : 1;

  // identity law used when x2 is pinned to v2
  std::vector<double> x2_identity(x2_rows * static_cast<std::size_t>(cfg.x2_card), 0.0);
  for (int v1 = 0; v1 < v1_card; ++v1)
    for (int v2 = 0; v2 < cfg.v2_card; ++v2) {
      std::size_t row = static_cast<std::size_t>(v1) * cfg.v2_card + v2;
      x2_identity[row * cfg.x2_card + v2] = 1.0;
    }

  struct Best {
    bool found = false;
    double r2 = -1.0;
    std::size_t order = 0;
    DmcRateReport report;
    std::size_t v2_idx = 0, x2_idx = 0;
  };

  const std::size_t total = v2_count * x2_count;
  std::mutex mu;
  Best best;
  std::atomic<std::size_t> evaluated{0};

  auto make_scheme = [&](std::size_t v2_idx, std::size_t x2_idx) {
    DmcScheme s;
    s.pmf_v1 = family.pmf_v1;
    s.x1_given_v1 = family.x1_given_v1;
    s.channel_with_t2 = family.channel_with_t2;
    s.channel_without_t2 = family.channel_without_t2;
    s.v2_given_v1 = CondPmf({"v1"}, {v1_card}, {"v2"}, {cfg.v2_card},
                            assemble_rows(v2_grid, v2_idx, v2_rows));
    s.x2_given_v1v2 = CondPmf({"v1", "v2"}, {v1_card, cfg.v2_card}, {"x2"}, {cfg.x2_card},
                              cfg.search_x2 ? assemble_rows(x2_grid, x2_idx, x2_rows)
                                            : x2_identity);
    s.eta = {0.5, 0.5, 0.0};  // fractions unused by the single-phase evaluator
    return s;
  };

  parallel_for(v2_count, cfg.threads, [&](std::size_t v2_idx) {
    Best local;
    for (std::size_t x2_idx = 0; x2_idx < x2_count; ++x2_idx) {
      DmcScheme s = make_scheme(v2_idx, x2_idx);
      DmcRateReport rep = dmc_single_phase_rate(s);
      evaluated.fetch_add(1, std::memory_order_relaxed);
      if (!rep.feasible(cfg.secrecy_tol, cfg.reliability_tol)) continue;
      const std::size_t order = v2_idx * x2_count + x2_idx;
      if (!local.found || rep.r2 > local.r2 + 1e-15 ||
          (std::abs(rep.r2 - local.r2) <= 1e-15 && order < local.order)) {
        local = {true, rep.r2, order, rep, v2_idx, x2_idx};
      }
    }
    if (!local.found) return;
    std::lock_guard<std::mutex> lock(mu);
    if (!best.found || local.r2 > best.r2 + 1e-15 ||
        (std::abs(local.r2 - best.r2) <= 1e-15 && local.order < best.order))
      best = local;
  });

  BruteForceResult out;
  out.evaluated = evaluated.load();
  out.found = best.found;
  if (best.found) {
    out.report = best.report;
    out.best = make_scheme(best.v2_idx, best.x2_idx);
  }
  return out;
}

namespace {

// conditional table P(y|x1) extracted from the joint, rows of zero-mass
// inputs left uniform
std::vector<double> marginal_channel(const JointPmf& p, const std::string& y) {
  const JointPmf m = p.marginal({"x1", y});
  const JointPmf mx = p.marginal({"x1"});
  const int nx = m.cards()[0], ny = m.cards()[1];
  std::vector<double> table(static_cast<std::size_t>(nx) * ny, 0.0);
  for (int x = 0; x < nx; ++x)
    for (int iy = 0; iy < ny; ++iy) {
      double px = mx.probs()[static_cast<std::size_t>(x)];
      table[static_cast<std::size_t>(x) * ny + iy] =
          px > 0.0 ? m.probs()[static_cast<std::size_t>(x) * ny + iy] / px : 1.0 / ny;
    }
  return table;
}

// project v onto the probability simplex
void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = static_cast<int>(i + 1);
      theta = t;
    }
  }
  if (rho == 0) theta = (css - 1.0) / static_cast<double>(u.size());
  for (auto& x : v) x = std::max(0.0, x - theta);
}

// Frobenius-norm residual of fitting M2 = Q * M1 with Q >= 0 and
// column-stochastic in the y1 index, by projected gradient descent.
double degradedness_residual(const std::vector<double>& m1, int ny1, const std::vector<double>& m2,
                             int ny2, int nx) {
  // unknown Q indexed [y2][y1]
  std::vector<double> q(static_cast<std::size_t>(ny2) * ny1, 1.0 / ny2);
  double lip = 0.0;
  for (double v : m1) lip += v * v;
  const double step = 1.0 / std::max(2.0 * lip, 1e-9);

  auto residual = [&](const std::vector<double>& qq, std::vector<double>* grad) {
    double f = 0.0;
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    for (int y2 = 0; y2 < ny2; ++y2)
      for (int x = 0; x < nx; ++x) {
        double pred = 0.0;
        for (int y1 = 0; y1 < ny1; ++y1)
          pred += qq[static_cast<std::size_t>(y2) * ny1 + y1] *
                  m1[static_cast<std::size_t>(x) * ny1 + y1];
        const double diff = pred - m2[static_cast<std::size_t>(x) * ny2 + y2];
        f += diff * diff;
        if (grad)
          for (int y1 = 0; y1 < ny1; ++y1)
            (*grad)[static_cast<std::size_t>(y2) * ny1 + y1] +=
                2.0 * diff * m1[static_cast<std::size_t>(x) * ny1 + y1];
      }
    return f;
  };

  std::vector<double> grad(q.size());
  std::vector<double> col(static_cast<std::size_t>(ny2));
  for (int it = 0; it < 20000; ++it) {
    double f = residual(q, &grad);
    if (f < 1e-16) break;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= step * grad[i];
    for (int y1 = 0; y1 < ny1; ++y1) {
      for (int y2 = 0; y2 < ny2; ++y2) col[static_cast<std::size_t>(y2)] =
          q[static_cast<std::size_t>(y2) * ny1 + y1];
      project_simplex(col);
      for (int y2 = 0; y2 < ny2; ++y2)
        q[static_cast<std::size_t>(y2) * ny1 + y1] = col[static_cast<std::size_t>(y2)];
    }
  }
  return std::sqrt(residual(q, nullptr));
}

}  // namespace

DmcOuterBound dmc_outer_bound(const JointPmf& p, double r_s1_target) {
  for (const char* v : {"u", "v", "x1", "x2", "y1", "y2"})
    if (!p.has(v))
      throw std::invalid_argument(std::string("dmc_outer_bound: pmf lacks variable ") + v);
  if (r_s1_target < 0.0) throw std::invalid_argument("dmc_outer_bound: negative target");

  const double screening =
      conditional_mutual_information(p, {"y1", "y2"}, {"u", "v"}, {"x1", "x2"});
  if (screening > 1e-9)
    throw std::domain_error(
        "dmc_outer_bound: violated factorization P(y1,y2|x1,x2,u,v) = P(y1,y2|x1,x2) "
        "(auxiliaries not screened by the channel inputs)");

  const int nx = p.card("x1"), ny1 = p.card("y1"), ny2 = p.card("y2");
  const auto m1 = marginal_channel(p, "y1");
  const auto m2 = marginal_channel(p, "y2");
  const double resid = degradedness_residual(m1, ny1, m2, ny2, nx);
  if (resid > 1e-6)
    throw std::domain_error(
        "dmc_outer_bound: violated factorization P(y2|x1) = sum_y1 Q(y2|y1) P(y1|x1) "
        "(y2 is not a degraded version of y1); residual " +
        std::to_string(resid));

  const double equiv = conditional_mutual_information(p, {"x1"}, {"y1"}, {"v"}) -
                       conditional_mutual_information(p, {"x1"}, {"y2"}, {"v"});
  DmcOuterBound out;
  out.r_s1_ub = std::min(pos(equiv), mutual_information(p, {"u"}, {"y1"}));
  out.r2_ub = pos(mutual_information(p, {"v"}, {"y2"}) -
                  pos(r_s1_target - conditional_mutual_information(p, {"x1"}, {"y1"}, {"v"})));
  return out;
}

}  // namespace secrelay
