#include "secrelay/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace secrelay {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (trim(v.substr(pos)).empty()) return d;
  } catch (...) {
  }
  throw config_error("config field '" + key + "': not a number: '" + v + "'");
}

std::vector<double> parse_doubles(const std::string& v, const std::string& key) {
  std::string s = v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream is(s);
  std::vector<double> out;
  double d;
  while (is >> d) out.push_back(d);
  is.clear();
  std::string rest;
  is >> rest;
  if (!rest.empty()) throw config_error("config field '" + key + "': trailing junk '" + rest + "'");
  return out;
}

Vec2 parse_vec2(const std::string& v, const std::string& key) {
  auto d = parse_doubles(v, key);
  if (d.size() != 2) throw config_error("config field '" + key + "': expected two coordinates");
  return {d[0], d[1]};
}

cplx parse_gain(const std::string& v, const std::string& key) {
  auto d = parse_doubles(v, key);
  if (d.size() == 1) return {d[0], 0.0};
  if (d.size() == 2) return {d[0], d[1]};
  throw config_error("config field '" + key + "': expected 'real' or 'real imag'");
}

bool parse_bool(const std::string& v, const std::string& key) {
  std::string s = lower(trim(v));
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw config_error("config field '" + key + "': not a boolean: '" + v + "'");
}

SchemeType parse_scheme(const std::string& v, const std::string& key) {
  std::string s = lower(trim(v));
  if (s == "dpc_3phase" || s == "dpc") return SchemeType::dpc_3phase;
  if (s == "nodpc_3phase" || s == "nodpc") return SchemeType::nodpc_3phase;
  if (s == "dpc_single") return SchemeType::dpc_single;
  if (s == "nodpc_single") return SchemeType::nodpc_single;
  throw config_error("config field '" + key + "': unknown scheme '" + v + "'");
}

}  // namespace

double parse_power(const std::string& value, const std::string& key) {
  std::string v = lower(trim(value));
  auto ends_with = [&](const std::string& suf) {
    return v.size() > suf.size() && v.compare(v.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends_with("db")) return db_to_linear(parse_double(trim(v.substr(0, v.size() - 2)), key));
  if (ends_with("lin")) {
    double lin = parse_double(trim(v.substr(0, v.size() - 3)), key);
    if (lin < 0.0) throw config_error("config field '" + key + "': negative linear power");
    return lin;
  }
  throw config_error("config field '" + key + "': power needs a unit suffix 'db' or 'lin'");
}

namespace {

std::vector<double> parse_power_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_power(item, key));
  }
  if (out.empty()) throw config_error("config field '" + key + "': empty power list");
  return out;
}

using Section = std::map<std::string, std::string>;
using Ini = std::map<std::string, Section>;

Ini parse_ini(const std::string& text) {
  Ini ini;
  std::string section;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("config line " + std::to_string(lineno) + ": malformed section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      ini[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = lower(trim(line.substr(0, eq)));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) + ": empty key");
    ini[section][key] = val;
  }
  return ini;
}

}  // namespace

Scenario RunConfig::make_scenario() const {
  ChannelGains g;
  if (geometry && raw_gains)
    throw config_error("scenario: give either geometry or raw gains, not both");
  if (geometry)
    g = gains_from_geometry(*geometry, normalize);
  else if (raw_gains)
    g = normalize ? raw_gains->normalized() : *raw_gains;
  else
    throw config_error("scenario: missing node geometry or raw gains");
  return Scenario::make(g, p1, p2, rs1_target);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig parse_config_text(const std::string& text) {
  const Ini ini = parse_ini(text);
  RunConfig cfg;

  for (const auto& [section, kv] : ini) {
    if (section == "scenario") {
      Geometry geo;
      bool any_geo = false, any_gain = false;
      ChannelGains g;
      for (const auto& [key, val] : kv) {
        if (key == "t1") { geo.t1 = parse_vec2(val, key); any_geo = true; }
        else if (key == "u1") { geo.u1 = parse_vec2(val, key); any_geo = true; }
        else if (key == "t2") { geo.t2 = parse_vec2(val, key); any_geo = true; }
        else if (key == "u2") { geo.u2 = parse_vec2(val, key); any_geo = true; }
        else if (key == "pathloss_exponent") { geo.pathloss_exponent = parse_double(val, key); any_geo = true; }
        else if (key == "c11") { g.c11 = parse_gain(val, key); any_gain = true; }
        else if (key == "c12") { g.c12 = parse_gain(val, key); any_gain = true; }
        else if (key == "c21") { g.c21 = parse_gain(val, key); any_gain = true; }
        else if (key == "c22") { g.c22 = parse_gain(val, key); any_gain = true; }
        else if (key == "ctt") { g.ctt = parse_gain(val, key); any_gain = true; }
        else if (key == "normalize") cfg.normalize = parse_bool(val, key);
        else if (key == "p1") cfg.p1 = parse_power(val, key);
        else if (key == "p2") cfg.p2 = parse_power(val, key);
        else if (key == "rs1_target") cfg.rs1_target = parse_double(val, key);
        else throw config_error("config field 'scenario." + key + "': unknown key");
      }
      if (any_geo && any_gain)
        throw config_error("scenario: give either geometry or raw gains, not both");
      if (any_geo) cfg.geometry = geo;
      if (any_gain) cfg.raw_gains = g;
    } else if (section == "params") {
      for (const auto& [key, val] : kv) {
        if (key == "eta2") cfg.eta2 = parse_double(val, key);
        else if (key == "rho2") cfg.rho2 = parse_double(val, key);
        else if (key == "rho3") cfg.rho3 = parse_double(val, key);
        else if (key == "gamma") cfg.gamma = parse_double(val, key);
        else if (key == "p2_2") cfg.p2_2 = parse_power(val, key);
        else if (key == "p2_3") cfg.p2_3 = parse_power(val, key);
        else throw config_error("config field 'params." + key + "': unknown key");
      }
    } else if (section == "optimizer") {
      for (const auto& [key, val] : kv) {
        if (key == "scheme") cfg.scheme = parse_scheme(val, key);
        else if (key == "starts") cfg.budget.starts = static_cast<int>(parse_double(val, key));
        else if (key == "evals") cfg.budget.evals_per_start = static_cast<int>(parse_double(val, key));
        else if (key == "step_tol") cfg.budget.step_tol = parse_double(val, key);
        else if (key == "seed") cfg.seed = static_cast<uint64_t>(parse_double(val, key));
        else if (key == "threads") cfg.threads = static_cast<int>(parse_double(val, key));
        else throw config_error("config field 'optimizer." + key + "': unknown key");
      }
    } else if (section == "sweep") {
      cfg.sweep_configured = true;
      for (const auto& [key, val] : kv) {
        if (key == "x") {
          auto d = parse_doubles(val, key);
          if (d.size() != 3) throw config_error("config field 'sweep.x': expected min max step");
          cfg.sweep.x_min = d[0]; cfg.sweep.x_max = d[1]; cfg.sweep.x_step = d[2];
        } else if (key == "y") {
          auto d = parse_doubles(val, key);
          if (d.size() != 3) throw config_error("config field 'sweep.y': expected min max step");
          cfg.sweep.y_min = d[0]; cfg.sweep.y_max = d[1]; cfg.sweep.y_step = d[2];
        } else if (key == "t1") cfg.sweep.t1 = parse_vec2(val, key);
        else if (key == "u1") cfg.sweep.u1 = parse_vec2(val, key);
        else if (key == "u2") cfg.sweep.u2 = parse_vec2(val, key);
        else if (key == "pathloss_exponent") cfg.sweep.pathloss_exponent = parse_double(val, key);
        else if (key == "p1") cfg.sweep.p1 = parse_power(val, key);
        else if (key == "p2") cfg.sweep.p2_list = parse_power_list(val, key);
        else if (key == "schemes") {
          cfg.sweep.schemes.clear();
          std::stringstream ss(val);
          std::string item;
          while (std::getline(ss, item, ';'))
            if (!trim(item).empty()) cfg.sweep.schemes.push_back(parse_scheme(trim(item), key));
          if (cfg.sweep.schemes.empty())
            throw config_error("config field 'sweep.schemes': empty scheme list");
        } else throw config_error("config field 'sweep." + key + "': unknown key");
      }
    } else if (section == "boundgap") {
      for (const auto& [key, val] : kv) {
        if (key == "p1") cfg.boundgap.p1 = parse_power(val, key);
        else if (key == "p2_min") cfg.boundgap.p2_min = parse_power(val, key);
        else if (key == "p2_max") cfg.boundgap.p2_max = parse_power(val, key);
        else if (key == "steps") cfg.boundgap.p2_steps = static_cast<int>(parse_double(val, key));
        else if (key == "samples") cfg.boundgap.outer.samples = static_cast<int>(parse_double(val, key));
        else throw config_error("config field 'boundgap." + key + "': unknown key");
      }
    } else if (section == "dof") {
      for (const auto& [key, val] : kv) {
        if (key == "p2") cfg.dof.p2_grid = parse_power_list(val, key);
        else if (key == "rho_check_p2") cfg.dof.rho_check_p2 = parse_power(val, key);
        else if (key == "p1") cfg.dof.p1 = parse_power(val, key);
        else throw config_error("config field 'dof." + key + "': unknown key");
      }
    } else if (section == "dmc") {
      for (const auto& [key, val] : kv) {
        if (key == "mode") {
          std::string m = lower(trim(val));
          if (m != "single" && m != "three" && m != "brute")
            throw config_error("config field 'dmc.mode': expected single, three or brute");
          cfg.dmc_mode = m;
        } else if (key == "pmf_v1" || key == "x1_given_v1" || key == "v2_given_v1" ||
                   key == "x2_given_v1v2" || key == "channel_with_t2" ||
                   key == "channel_without_t2") {
          cfg.dmc_paths[key] = val;
        } else if (key == "eta") {
          auto d = parse_doubles(val, key);
          if (d.size() != 3) throw config_error("config field 'dmc.eta': expected three fractions");
          cfg.dmc_eta = {d[0], d[1], d[2]};
        } else if (key == "v2_card") cfg.dmc_v2_card = static_cast<int>(parse_double(val, key));
        else if (key == "x2_card") cfg.dmc_x2_card = static_cast<int>(parse_double(val, key));
        else if (key == "step") cfg.dmc_step = parse_double(val, key);
        else if (key == "search_x2") cfg.dmc_search_x2 = parse_bool(val, key);
        else throw config_error("config field 'dmc." + key + "': unknown key");
      }
    } else if (section == "output") {
      for (const auto& [key, val] : kv) {
        if (key == "dir") cfg.out_dir = val;
        else throw config_error("config field 'output." + key + "': unknown key");
      }
    } else if (section.empty() && kv.empty()) {
      // no top-level keys allowed
    } else {
      throw config_error("config section '[" + section + "]': unknown section");
    }
  }

  // propagate shared knobs into the experiment specs
  cfg.sweep.budget = cfg.budget;
  cfg.sweep.seed = cfg.seed;
  cfg.sweep.threads = cfg.threads;
  cfg.boundgap.budget = cfg.budget;
  cfg.boundgap.seed = cfg.seed;
  cfg.boundgap.threads = cfg.threads;
  cfg.dof.budget = cfg.budget;
  cfg.dof.seed = cfg.seed;
  cfg.dof.threads = cfg.threads;
  return cfg;
}

}  // namespace secrelay
