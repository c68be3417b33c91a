#include "secrelay/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "secrelay/parallel.hpp"
#include "secrelay/rng.hpp"

namespace secrelay {

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string spec_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> v;
  for (int i = 0;; ++i) {
    const double x = lo + i * step;
    if (x > hi + 1e-12) break;
    v.push_back(x);
  }
  return v;
}

Scenario scenario_at(const SweepSpec& spec, const Vec2& t2, double p2) {
  Geometry geo;
  geo.t1 = spec.t1;
  geo.u1 = spec.u1;
  geo.u2 = spec.u2;
  geo.t2 = t2;
  geo.pathloss_exponent = spec.pathloss_exponent;
  return Scenario::make(gains_from_geometry(geo, spec.normalize), spec.p1, p2);
}

// Solve one scheme; three-phase solves are warm-started from the matching
// single-phase optimum so the nested feasible sets order their rates.
SweepCell solve_cell(const Scenario& sc, SchemeType scheme, const OptBudget& budget,
                     uint64_t seed, int threads) {
  OptProblem prob;
  prob.scenario = sc;
  prob.scheme = scheme;
  prob.budget = budget;
  prob.seed = seed;
  prob.threads = threads;
  if (!scheme_single_phase(scheme)) {
    OptProblem sp = prob;
    sp.scheme = scheme_uses_dpc(scheme) ? SchemeType::dpc_single : SchemeType::nodpc_single;
    const OptResult spr = solve(sp);
    if (spr.status == OptStatus::feasible_opt) prob.warm_starts.push_back(spr.best);
  }
  const OptResult r = solve(prob);
  SweepCell cell;
  cell.feasible = r.status == OptStatus::feasible_opt;
  if (cell.feasible) {
    cell.r2 = r.report.r2;
    cell.params = r.best;
  }
  return cell;
}

}  // namespace

std::size_t SweepSpec::grid_count() const {
  return axis(x_min, x_max, x_step).size() * axis(y_min, y_max, y_step).size();
}

std::string SweepSpec::canonical() const {
  std::ostringstream os;
  os << "sweep;x" << csv_num(x_min) << ':' << csv_num(x_max) << ':' << csv_num(x_step) << ";y"
     << csv_num(y_min) << ':' << csv_num(y_max) << ':' << csv_num(y_step) << ";t1"
     << csv_num(t1.x) << ',' << csv_num(t1.y) << ";u1" << csv_num(u1.x) << ',' << csv_num(u1.y)
     << ";u2" << csv_num(u2.x) << ',' << csv_num(u2.y) << ";a" << csv_num(pathloss_exponent)
     << ";n" << normalize << ";p1" << csv_num(p1) << ";p2";
  for (double p : p2_list) os << csv_num(p) << ',';
  os << ";s";
  for (auto s : schemes) os << scheme_name(s) << ',';
  os << ";starts" << budget.starts << ";evals" << budget.evals_per_start << ";seed" << seed;
  return os.str();
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  if (spec.x_step <= 0.0 || spec.y_step <= 0.0)
    throw std::invalid_argument("sweep: steps must be > 0");
  if (spec.p2_list.empty() || spec.schemes.empty())
    throw std::invalid_argument("sweep: empty p2 list or scheme list");
  const auto xs = axis(spec.x_min, spec.x_max, spec.x_step);
  const auto ys = axis(spec.y_min, spec.y_max, spec.y_step);
  std::vector<Vec2> points;
  for (double y : ys)
    for (double x : xs) points.push_back({x, y});

  std::vector<SweepRecord> records(points.size());
  parallel_for(points.size(), spec.threads, [&](std::size_t i) {
    SweepRecord rec;
    rec.t2 = points[i];
    Scenario probe = scenario_at(spec, points[i], spec.p2_list.front());
    rec.decodable = probe.gains.decodable();
    for (std::size_t pi = 0; pi < spec.p2_list.size(); ++pi) {
      const Scenario sc = scenario_at(spec, points[i], spec.p2_list[pi]);
      for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
        // solve() reports NO_FEASIBLE_POINT at non-decodable points; the
        // record is flagged, not dropped
        rec.cells.push_back(solve_cell(sc, spec.schemes[si], spec.budget,
                                       stream_seed(spec.seed, i * 97 + pi * 13 + si), 1));
      }
    }
    records[i] = std::move(rec);
  });
  return records;
}

void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRecord>& records,
                     std::ostream& out) {
  out << "# secrelay sweep; p1=" << csv_num(spec.p1) << " linear; seed=" << spec.seed << "\n";
  for (std::size_t pi = 0; pi < spec.p2_list.size(); ++pi)
    out << "# p2[" << pi << "] = " << csv_num(spec.p2_list[pi]) << " linear\n";
  out << "x,y,decodable";
  for (std::size_t pi = 0; pi < spec.p2_list.size(); ++pi)
    for (const auto& s : spec.schemes) {
      const std::string tag = std::string(scheme_name(s)) + "_p" + std::to_string(pi);
      out << ",feasible_" << tag << ",r2_" << tag << ",eta2_" << tag << ",eta3_" << tag
          << ",rho2_" << tag << ",rho3_" << tag << ",gamma_" << tag << ",p2_2_" << tag
          << ",p2_3_" << tag;
    }
  out << "\n";
  for (const auto& rec : records) {
    out << csv_num(rec.t2.x) << ',' << csv_num(rec.t2.y) << ',' << (rec.decodable ? 1 : 0);
    for (const auto& c : rec.cells) {
      out << ',' << (c.feasible ? 1 : 0) << ',' << csv_num(c.r2) << ',' << csv_num(c.params.eta2)
          << ',' << csv_num(c.params.eta3) << ',' << csv_num(c.params.rho2) << ','
          << csv_num(c.params.rho3) << ',' << csv_num(c.params.gamma) << ','
          << csv_num(c.params.p2_2) << ',' << csv_num(c.params.p2_3);
    }
    out << "\n";
  }
}

ChannelGains bound_gap_gains() {
  ChannelGains g;
  g.c11 = 1.0;
  g.c12 = 0.9;                      // |c12|^2 = 0.81
  g.c21 = std::sqrt(0.05);          // |c21|^2 = 0.05
  g.c22 = std::sqrt(5.0);           // makes |c21|/|c22| = 0.1
  g.ctt = 10.0;
  return g;
}

Scenario bound_gap_scenario(double p2, double p1) {
  return Scenario::make(bound_gap_gains(), p1, p2);
}

std::string BoundGapSpec::canonical() const {
  std::ostringstream os;
  os << "boundgap;p1" << csv_num(p1) << ";p2" << csv_num(p2_min) << ':' << csv_num(p2_max) << ':'
     << p2_steps << ";starts" << budget.starts << ";evals" << budget.evals_per_start << ";samples"
     << outer.samples << ";seed" << seed;
  return os.str();
}

std::vector<BoundGapRecord> run_bound_gap(const BoundGapSpec& spec) {
  if (spec.p2_steps < 2) throw std::invalid_argument("bound gap: need at least two p2 steps");
  std::vector<double> p2s;
  for (int i = 0; i < spec.p2_steps; ++i)
    p2s.push_back(spec.p2_min + (spec.p2_max - spec.p2_min) * i / (spec.p2_steps - 1));

  const Scenario probe = bound_gap_scenario(spec.p2_min, spec.p1);
  const double eta1_star = eta1_min(probe);

  std::vector<BoundGapRecord> records(p2s.size());
  parallel_for(p2s.size(), spec.threads, [&](std::size_t i) {
    BoundGapRecord rec;
    rec.p2 = p2s[i];
    const Scenario sc = bound_gap_scenario(p2s[i], spec.p1);

    OptProblem prob;
    prob.scenario = sc;
    prob.scheme = SchemeType::dpc_3phase;
    prob.budget = spec.budget;
    prob.seed = stream_seed(spec.seed, i);
    prob.threads = 1;
    const OptResult lb = solve(prob);
    rec.lb_feasible = lb.status == OptStatus::feasible_opt;
    rec.lb = rec.lb_feasible ? lb.report.r2 : 0.0;

    R2OuterConfig ocfg = spec.outer;
    ocfg.seed = spec.seed;
    ocfg.threads = 1;
    const StandardizedChannel std_ch = standardize(sc.gains, sc.p1, sc.p2);
    const R2OuterResult ub = r2_outer(std_ch, sc.rs1_target, ocfg);
    rec.ub_feasible = ub.feasible;
    rec.degradedness_flag = ub.degradedness_flag;
    rec.ub_raw = ub.r2_ub;
    rec.ub_scaled = scale_ub(ub.r2_ub, eta1_star);
    rec.gap = rec.ub_scaled - rec.lb;
    records[i] = rec;
  });
  return records;
}

void write_bound_gap_csv(const BoundGapSpec& spec, const std::vector<BoundGapRecord>& records,
                         std::ostream& out) {
  out << "# secrelay bound gap; p1=" << csv_num(spec.p1) << " linear; seed=" << spec.seed << "\n";
  out << "p2,lb,ub_raw,ub_scaled,gap,lb_feasible,ub_feasible,degradedness_flag\n";
  for (const auto& r : records)
    out << csv_num(r.p2) << ',' << csv_num(r.lb) << ',' << csv_num(r.ub_raw) << ','
        << csv_num(r.ub_scaled) << ',' << csv_num(r.gap) << ',' << (r.lb_feasible ? 1 : 0) << ','
        << (r.ub_feasible ? 1 : 0) << ',' << (r.degradedness_flag ? 1 : 0) << "\n";
}

std::string PowerStudySpec::canonical() const {
  return base.canonical() + ";power;" + csv_num(p2_low) + ";" + csv_num(p2_high);
}

PowerStudyResult run_power_study(const PowerStudySpec& spec) {
  SweepSpec s = spec.base;
  s.p2_list = {spec.p2_low, spec.p2_high};
  s.schemes = {SchemeType::dpc_3phase, SchemeType::dpc_single};
  const auto records = run_sweep(s);

  PowerStudyResult out;
  std::vector<double> gaps;
  for (const auto& rec : records) {
    PowerStudyRecord pr;
    pr.t2 = rec.t2;
    pr.decodable = rec.decodable;
    // cells: (p2_low, dpc3), (p2_low, sp), (p2_high, dpc3), (p2_high, sp)
    pr.r2_dpc_low = rec.cells[0].r2;
    pr.r2_sp_low = rec.cells[1].r2;
    pr.r2_dpc_high = rec.cells[2].r2;
    pr.r2_sp_high = rec.cells[3].r2;
    pr.feasible = rec.cells[0].feasible && rec.cells[1].feasible && rec.cells[2].feasible &&
                  rec.cells[3].feasible;
    if (pr.feasible) gaps.push_back(pr.delta_dpc() - pr.delta_sp());
    out.records.push_back(pr);
  }
  if (!gaps.empty()) {
    std::sort(gaps.begin(), gaps.end());
    const std::size_t n = gaps.size();
    out.median_delta_gap = n % 2 ? gaps[n / 2] : 0.5 * (gaps[n / 2 - 1] + gaps[n / 2]);
  }
  return out;
}

void write_power_study_csv(const PowerStudySpec& spec, const PowerStudyResult& result,
                           std::ostream& out) {
  out << "# secrelay power study; p2_low=" << csv_num(spec.p2_low)
      << " p2_high=" << csv_num(spec.p2_high) << " linear\n";
  out << "x,y,feasible,r2_dpc_low,r2_dpc_high,delta_dpc,r2_sp_low,r2_sp_high,delta_sp,"
         "delta_gap\n";
  for (const auto& r : result.records)
    out << csv_num(r.t2.x) << ',' << csv_num(r.t2.y) << ',' << (r.feasible ? 1 : 0) << ','
        << csv_num(r.r2_dpc_low) << ',' << csv_num(r.r2_dpc_high) << ',' << csv_num(r.delta_dpc())
        << ',' << csv_num(r.r2_sp_low) << ',' << csv_num(r.r2_sp_high) << ','
        << csv_num(r.delta_sp()) << ',' << csv_num(r.delta_dpc() - r.delta_sp()) << "\n";
}

std::string DofSpec::canonical() const {
  std::ostringstream os;
  os << "dof;p1" << csv_num(p1) << ";grid";
  for (double p : p2_grid) os << csv_num(p) << ',';
  os << ";check" << csv_num(rho_check_p2) << ";seed" << seed;
  return os.str();
}

DofResult run_dof_study(const DofSpec& spec) {
  if (spec.t2_samples.empty()) throw std::invalid_argument("dof: no t2 samples");
  DofResult out;

  Geometry geo;
  geo.t1 = spec.t1;
  geo.u1 = spec.u1;
  geo.u2 = spec.u2;
  geo.pathloss_exponent = spec.pathloss_exponent;
  geo.t2 = spec.t2_samples.front();
  const ChannelGains gains = gains_from_geometry(geo);
  const Scenario probe = Scenario::make(gains, spec.p1, spec.p2_grid.front());
  out.eta2_limit = 1.0 - eta1_min(probe);

  // outer-bound slope at the first sample position
  std::vector<double> ub_vals(spec.p2_grid.size());
  parallel_for(spec.p2_grid.size(), spec.threads, [&](std::size_t i) {
    R2OuterConfig cfg = spec.outer;
    cfg.seed = spec.seed;
    cfg.threads = 1;
    const StandardizedChannel std_ch = standardize(gains, spec.p1, spec.p2_grid[i]);
    const R2OuterResult r = r2_outer(std_ch, probe.rs1_target, cfg);
    ub_vals[i] = r.r2_ub;
  });
  for (std::size_t i = 0; i < spec.p2_grid.size(); ++i)
    out.records.push_back({"ub", geo.t2, spec.p2_grid[i], ub_vals[i], 0.0, 0.0});
  out.slope_ub = fit_slope_log2(spec.p2_grid, ub_vals).slope;

  // achievable slope from the optimizer at the same position
  std::vector<double> lb_vals(spec.p2_grid.size());
  std::vector<SchemeParams> lb_params(spec.p2_grid.size());
  parallel_for(spec.p2_grid.size(), spec.threads, [&](std::size_t i) {
    OptProblem prob;
    prob.scenario = Scenario::make(gains, spec.p1, spec.p2_grid[i]);
    prob.scheme = SchemeType::dpc_3phase;
    prob.budget = spec.budget;
    prob.seed = stream_seed(spec.seed, 1000 + i);
    prob.threads = 1;
    const OptResult r = solve(prob);
    lb_vals[i] = r.status == OptStatus::feasible_opt ? r.report.r2 : 0.0;
    lb_params[i] = r.best;
  });
  for (std::size_t i = 0; i < spec.p2_grid.size(); ++i)
    out.records.push_back(
        {"lb", geo.t2, spec.p2_grid[i], lb_vals[i], lb_params[i].eta2, lb_params[i].rho2});
  out.slope_lb = fit_slope_log2(spec.p2_grid, lb_vals).slope;

  // jamming fraction at the check power over all sample positions
  out.rho2_at_check.assign(spec.t2_samples.size(), 0.0);
  parallel_for(spec.t2_samples.size(), spec.threads, [&](std::size_t i) {
    Geometry g = geo;
    g.t2 = spec.t2_samples[i];
    OptProblem prob;
    prob.scenario = Scenario::make(gains_from_geometry(g), spec.p1, spec.rho_check_p2);
    prob.scheme = SchemeType::dpc_3phase;
    prob.budget = spec.budget;
    prob.seed = stream_seed(spec.seed, 2000 + i);
    prob.threads = 1;
    const OptResult r = solve(prob);
    out.rho2_at_check[i] = r.status == OptStatus::feasible_opt ? r.best.rho2 : 0.0;
  });
  return out;
}

void write_dof_csv(const DofSpec& spec, const DofResult& result, std::ostream& out) {
  out << "# secrelay dof study; slope_ub=" << csv_num(result.slope_ub)
      << " slope_lb=" << csv_num(result.slope_lb) << " eta2_limit=" << csv_num(result.eta2_limit)
      << "\n";
  out << "kind,x,y,p2,r2,eta2,rho2\n";
  for (const auto& r : result.records)
    out << r.kind << ',' << csv_num(r.t2.x) << ',' << csv_num(r.t2.y) << ',' << csv_num(r.p2)
        << ',' << csv_num(r.r2) << ',' << csv_num(r.eta2) << ',' << csv_num(r.rho2) << "\n";
  for (std::size_t i = 0; i < result.rho2_at_check.size(); ++i)
    out << "rho2_check," << csv_num(spec.t2_samples[i].x) << ',' << csv_num(spec.t2_samples[i].y)
        << ',' << csv_num(spec.rho_check_p2) << ",0,0," << csv_num(result.rho2_at_check[i])
        << "\n";
}

}  // namespace secrelay
