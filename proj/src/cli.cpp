#include "secrelay/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "secrelay/dmc.hpp"

namespace secrelay {

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& filename) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  const fs::path path = fs::path(cfg.out_dir) / filename;
  std::ofstream out(path);
  if (!out) throw io_error("cannot write output file " + path.string());
  return out;
}

std::string out_path(const RunConfig& cfg, const std::string& filename) {
  return (std::filesystem::path(cfg.out_dir) / filename).string();
}

SchemeParams params_from_config(const RunConfig& cfg, const Scenario& sc) {
  const double eta1 = eta1_min(sc);
  const double eta2 = cfg.eta2.value_or(0.5 * (1.0 - eta1));
  return SchemeParams::make(eta1, eta2, cfg.rho2.value_or(0.0), cfg.rho3.value_or(0.0),
                            cfg.gamma.value_or(0.0), cfg.p2_2.value_or(0.0),
                            cfg.p2_3.value_or(0.0));
}

void print_report(std::ostream& out, const char* label, const RateReport& rep) {
  out << label << ".r2 = " << csv_num(rep.r2) << "\n"
      << label << ".feasible = " << (rep.feasible ? 1 : 0) << "\n"
      << label << ".residual_reliability = " << csv_num(rep.residual_reliability) << "\n"
      << label << ".residual_secrecy = " << csv_num(rep.residual_secrecy) << "\n";
  const MiTerms& t = rep.terms;
  out << label << ".i_v1_y1_p1 = " << csv_num(t.i_v1_y1_p1) << "\n"
      << label << ".i_v1_y2_p1 = " << csv_num(t.i_v1_y2_p1) << "\n"
      << label << ".i_v1_y1_p2 = " << csv_num(t.i_v1_y1_p2) << "\n"
      << label << ".i_v1_v2y2_p2 = " << csv_num(t.i_v1_v2y2_p2) << "\n"
      << label << ".i_v1_y2_p2_given_v2 = " << csv_num(t.i_v1_y2_p2_given_v2) << "\n"
      << label << ".i_v1_v2 = " << csv_num(t.i_v1_v2) << "\n"
      << label << ".i_v2_y2_p2 = " << csv_num(t.i_v2_y2_p2) << "\n"
      << label << ".i_v1_y1_p3 = " << csv_num(t.i_v1_y1_p3) << "\n"
      << label << ".i_v1_y2_p3 = " << csv_num(t.i_v1_y2_p3) << "\n"
      << label << ".mmse_alpha = " << csv_num(t.mmse_alpha) << "\n";
}

}  // namespace

int cmd_rates(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = cfg.make_scenario();
  const double eta1 = eta1_min(sc);
  out << "eta1* = " << csv_num(eta1) << "\n";
  out << "baseline_secrecy_rate = " << csv_num(baseline_secrecy_rate(sc)) << "\n";
  out << "rs1_target = " << csv_num(sc.rs1_target) << "\n";

  const SchemeParams p = params_from_config(cfg, sc);
  out << "params = eta1:" << csv_num(p.eta1) << " eta2:" << csv_num(p.eta2)
      << " eta3:" << csv_num(p.eta3) << " rho2:" << csv_num(p.rho2) << " rho3:" << csv_num(p.rho3)
      << " gamma:" << csv_num(p.gamma) << " p2_2:" << csv_num(p.p2_2)
      << " p2_3:" << csv_num(p.p2_3) << "\n";
  print_report(out, "dpc", dpc_rate(sc, p));
  print_report(out, "nodpc", no_dpc_rate(sc, p));
  print_report(out, "single_phase_dpc", single_phase_rate(sc, p, true));
  return kExitOk;
}

int cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  const Scenario sc = cfg.make_scenario();
  OptProblem prob;
  prob.scenario = sc;
  prob.scheme = cfg.scheme;
  prob.budget = cfg.budget;
  prob.seed = cfg.seed;
  prob.threads = cfg.threads;
  const OptResult res = solve(prob);

  const std::string fname = "optimize_trace_" + spec_hash(scheme_name(cfg.scheme) +
                                                          std::to_string(cfg.seed)) + ".csv";
  {
    auto trace = open_output(cfg, fname);
    trace << "start,feasible,r2,eta2,eta3,rho2,rho3,gamma,p2_2,p2_3\n";
    for (const auto& t : res.trace)
      trace << t.start << ',' << (t.feasible ? 1 : 0) << ',' << csv_num(t.r2) << ','
            << csv_num(t.params.eta2) << ',' << csv_num(t.params.eta3) << ','
            << csv_num(t.params.rho2) << ',' << csv_num(t.params.rho3) << ','
            << csv_num(t.params.gamma) << ',' << csv_num(t.params.p2_2) << ','
            << csv_num(t.params.p2_3) << "\n";
  }
  out << "scheme = " << scheme_name(cfg.scheme) << "\n";
  out << "trace = " << out_path(cfg, fname) << "\n";
  if (res.status == OptStatus::no_feasible_point) {
    out << "status = no_feasible_point\n";
    out << "message = " << res.message << "\n";
    return kExitInfeasible;
  }
  out << "status = feasible_opt\n";
  out << "r2 = " << csv_num(res.report.r2) << "\n";
  out << "best = eta2:" << csv_num(res.best.eta2) << " eta3:" << csv_num(res.best.eta3)
      << " rho2:" << csv_num(res.best.rho2) << " rho3:" << csv_num(res.best.rho3)
      << " gamma:" << csv_num(res.best.gamma) << " p2_2:" << csv_num(res.best.p2_2)
      << " p2_3:" << csv_num(res.best.p2_3) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto records = run_sweep(cfg.sweep);
  const std::string fname = "sweep_" + spec_hash(cfg.sweep.canonical()) + ".csv";
  auto file = open_output(cfg, fname);
  write_sweep_csv(cfg.sweep, records, file);
  out << "records = " << records.size() << "\n";
  out << "file = " << out_path(cfg, fname) << "\n";
  return kExitOk;
}

int cmd_boundgap(const RunConfig& cfg, std::ostream& out) {
  const auto records = run_bound_gap(cfg.boundgap);
  const std::string fname = "boundgap_" + spec_hash(cfg.boundgap.canonical()) + ".csv";
  auto file = open_output(cfg, fname);
  write_bound_gap_csv(cfg.boundgap, records, file);
  double max_gap = 0.0, min_gap = 0.0;
  bool first = true;
  for (const auto& r : records) {
    if (first) {
      max_gap = min_gap = r.gap;
      first = false;
    }
    max_gap = std::max(max_gap, r.gap);
    min_gap = std::min(min_gap, r.gap);
  }
  out << "records = " << records.size() << "\n";
  out << "file = " << out_path(cfg, fname) << "\n";
  out << "max_gap = " << csv_num(max_gap) << "\n";
  out << "min_gap = " << csv_num(min_gap) << "\n";
  return kExitOk;
}

int cmd_dof(const RunConfig& cfg, std::ostream& out) {
  const DofResult res = run_dof_study(cfg.dof);
  const std::string fname = "dof_" + spec_hash(cfg.dof.canonical()) + ".csv";
  auto file = open_output(cfg, fname);
  write_dof_csv(cfg.dof, res, file);
  out << "file = " << out_path(cfg, fname) << "\n";
  out << "slope_ub = " << csv_num(res.slope_ub) << "\n";
  out << "slope_lb = " << csv_num(res.slope_lb) << "\n";
  out << "eta2_limit = " << csv_num(res.eta2_limit) << "\n";
  for (std::size_t i = 0; i < res.rho2_at_check.size(); ++i)
    out << "rho2_check[" << i << "] = " << csv_num(res.rho2_at_check[i]) << "\n";
  return kExitOk;
}

int cmd_dmc(const RunConfig& cfg, std::ostream& out) {
  auto path_for = [&](const char* key) {
    auto it = cfg.dmc_paths.find(key);
    if (it == cfg.dmc_paths.end())
      throw config_error(std::string("config field 'dmc.") + key + "': missing path");
    return it->second;
  };

  DmcRateReport rep;
  if (cfg.dmc_mode == "brute") {
    DmcFamily fam;
    fam.pmf_v1 = JointPmf::load_csv(path_for("pmf_v1"));
    fam.x1_given_v1 = CondPmf::load_csv(path_for("x1_given_v1"), 1);
    fam.channel_with_t2 = CondPmf::load_csv(path_for("channel_with_t2"), 2);
    fam.channel_without_t2 = CondPmf::load_csv(path_for("channel_without_t2"), 1);
    BruteForceConfig bcfg;
    bcfg.v2_card = cfg.dmc_v2_card;
    bcfg.x2_card = cfg.dmc_x2_card;
    bcfg.grid_step = cfg.dmc_step;
    bcfg.search_x2 = cfg.dmc_search_x2;
    bcfg.threads = cfg.threads;
    const BruteForceResult res = brute_force_best_r2(fam, bcfg);
    out << "evaluated = " << res.evaluated << "\n";
    out << "found = " << (res.found ? 1 : 0) << "\n";
    if (!res.found) {
      out << "note = feasible set empty at this grid step\n";
      return kExitOk;
    }
    rep = res.report;
  } else {
    DmcScheme s;
    s.pmf_v1 = JointPmf::load_csv(path_for("pmf_v1"));
    s.x1_given_v1 = CondPmf::load_csv(path_for("x1_given_v1"), 1);
    s.v2_given_v1 = CondPmf::load_csv(path_for("v2_given_v1"), 1);
    s.x2_given_v1v2 = CondPmf::load_csv(path_for("x2_given_v1v2"), 2);
    s.channel_with_t2 = CondPmf::load_csv(path_for("channel_with_t2"), 2);
    s.channel_without_t2 = CondPmf::load_csv(path_for("channel_without_t2"), 1);
    s.eta = cfg.dmc_eta;
    rep = cfg.dmc_mode == "three" ? dmc_three_phase_rate(s) : dmc_single_phase_rate(s);
  }

  const std::string fname = "dmc_report_" + spec_hash(cfg.dmc_mode) + ".csv";
  auto file = open_output(cfg, fname);
  file << "quantity,value\n";
  file << "r2," << csv_num(rep.r2) << "\n";
  file << "r_s1," << csv_num(rep.r_s1) << "\n";
  file << "r_s1_prime," << csv_num(rep.r_s1_prime) << "\n";
  file << "reliability_slack," << csv_num(rep.reliability_slack) << "\n";
  file << "secrecy_residual," << csv_num(rep.secrecy_residual) << "\n";
  out << "file = " << out_path(cfg, fname) << "\n";
  out << "r2 = " << csv_num(rep.r2) << "\n";
  out << "r_s1 = " << csv_num(rep.r_s1) << "\n";
  out << "r_s1_prime = " << csv_num(rep.r_s1_prime) << "\n";
  out << "reliability_slack = " << csv_num(rep.reliability_slack) << "\n";
  out << "secrecy_residual = " << csv_num(rep.secrecy_residual) << "\n";
  return kExitOk;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  try {
    if (name == "rates") return cmd_rates(cfg, out);
    if (name == "optimize") return cmd_optimize(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "boundgap") return cmd_boundgap(cfg, out);
    if (name == "dof") return cmd_dof(cfg, out);
    if (name == "dmc") return cmd_dmc(cfg, out);
    err << "unknown subcommand: " << name << "\n";
    return kExitConfig;
  } catch (const config_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const infeasible_error& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const io_error& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace secrelay
