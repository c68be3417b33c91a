#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "secrelay/optimizer.hpp"
#include "secrelay/outer_bound.hpp"

namespace secrelay {

// Geometric sweep over the secondary transmitter's position with the other
// three nodes pinned.
struct SweepSpec {
  double x_min = -0.5, x_max = 1.5, x_step = 0.05;
  double y_min = -0.5, y_max = 1.5, y_step = 0.05;
  Vec2 t1{0.0, 0.0}, u1{1.0, 0.0}, u2{1.0, -1.0};
  double pathloss_exponent = 3.0;
  bool normalize = true;
  double p1 = 10.0;                      // linear
  std::vector<double> p2_list{100.0};    // linear
  std::vector<SchemeType> schemes{SchemeType::dpc_3phase, SchemeType::nodpc_3phase,
                                  SchemeType::dpc_single};
  OptBudget budget;
  uint64_t seed = 1;
  int threads = 0;

  std::size_t grid_count() const;
  std::string canonical() const;  // serialization used for the filename hash
};

struct SweepCell {
  bool feasible = false;
  double r2 = 0.0;
  SchemeParams params;
};

struct SweepRecord {
  Vec2 t2;
  bool decodable = false;
  // cells ordered by (p2 index, scheme index)
  std::vector<SweepCell> cells;
};

std::vector<SweepRecord> run_sweep(const SweepSpec& spec);
void write_sweep_csv(const SweepSpec& spec, const std::vector<SweepRecord>& records,
                     std::ostream& out);

// The bound-comparison channel: standardized cross gains (a, b) = (0.1, 0.9)
// with |c_tt| = 10.  The published figures quote the squared cross gains, so
// the amplitudes here are their square roots.
ChannelGains bound_gap_gains();
Scenario bound_gap_scenario(double p2, double p1 = 10.0);

struct BoundGapSpec {
  double p1 = 10.0;
  double p2_min = 0.0, p2_max = 50.0;
  int p2_steps = 26;
  OptBudget budget;
  R2OuterConfig outer;
  uint64_t seed = 1;
  int threads = 0;

  std::string canonical() const;
};

struct BoundGapRecord {
  double p2 = 0.0;
  double lb = 0.0;          // best achievable secondary rate
  double ub_raw = 0.0;      // outer bound before scaling
  double ub_scaled = 0.0;   // (1 - eta1*) * ub_raw
  double gap = 0.0;         // ub_scaled - lb
  bool lb_feasible = false;
  bool ub_feasible = false;
  bool degradedness_flag = false;
};

std::vector<BoundGapRecord> run_bound_gap(const BoundGapSpec& spec);
void write_bound_gap_csv(const BoundGapSpec& spec, const std::vector<BoundGapRecord>& records,
                         std::ostream& out);

struct PowerStudySpec {
  SweepSpec base;           // schemes/p2_list overridden below
  double p2_low = 100.0;    // linear
  double p2_high = 1000.0;  // linear

  std::string canonical() const;
};

struct PowerStudyRecord {
  Vec2 t2;
  bool decodable = false;
  double r2_dpc_low = 0.0, r2_dpc_high = 0.0;
  double r2_sp_low = 0.0, r2_sp_high = 0.0;
  bool feasible = false;
  double delta_dpc() const { return r2_dpc_high - r2_dpc_low; }
  double delta_sp() const { return r2_sp_high - r2_sp_low; }
};

struct PowerStudyResult {
  std::vector<PowerStudyRecord> records;
  // median over feasible grid points of delta_dpc - delta_sp
  double median_delta_gap = 0.0;
};

PowerStudyResult run_power_study(const PowerStudySpec& spec);
void write_power_study_csv(const PowerStudySpec& spec, const PowerStudyResult& result,
                           std::ostream& out);

struct DofSpec {
  Vec2 t1{0.0, 0.0}, u1{1.0, 0.0}, u2{1.0, -1.0};
  std::vector<Vec2> t2_samples{{0.5, 0.0}, {0.3, 0.0}, {0.2, -0.2}, {0.7, -0.3}};
  double pathloss_exponent = 3.0;
  double p1 = 10.0;
  std::vector<double> p2_grid{1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8};
  double rho_check_p2 = 1e4;
  OptBudget budget;
  R2OuterConfig outer;
  uint64_t seed = 1;
  int threads = 0;

  std::string canonical() const;
};

struct DofRecord {
  std::string kind;  // "ub" or "lb"
  Vec2 t2;
  double p2 = 0.0;
  double r2 = 0.0;
  double eta2 = 0.0;
  double rho2 = 0.0;
};

struct DofResult {
  double slope_ub = 0.0;
  double slope_lb = 0.0;
  double eta2_limit = 0.0;  // 1 - eta1 at the slope sample position
  std::vector<double> rho2_at_check;  // per t2 sample, optimizer's rho2
  std::vector<DofRecord> records;
};

DofResult run_dof_study(const DofSpec& spec);
void write_dof_csv(const DofSpec& spec, const DofResult& result, std::ostream& out);

// FNV-1a hash of a spec serialization, used in output file names.
std::string spec_hash(const std::string& canonical);

// Formats a double the way every CSV writer does ("%.12g").
std::string csv_num(double v);

}  // namespace secrelay
