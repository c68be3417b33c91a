#pragma once

#include <vector>

#include "secrelay/awgn.hpp"
#include "secrelay/pmf.hpp"
#include "secrelay/rng.hpp"

namespace secrelay::test {

// random geometry with t2 inside the decodable disc around t1
inline Scenario random_scenario(Rng& rng, double p2_scale = 100.0) {
  Geometry geo;
  geo.t1 = {0.0, 0.0};
  geo.u1 = {1.0, 0.0};
  geo.u2 = {1.0, -1.0};
  const double r = 0.15 + 0.8 * rng.next_double();
  const double ang = 2.0 * M_PI * rng.next_double();
  geo.t2 = {r * std::cos(ang), r * std::sin(ang)};
  const double p1 = 1.0 + 20.0 * rng.next_double();
  const double p2 = p2_scale * rng.next_double();
  return Scenario::make(gains_from_geometry(geo), p1, p2);
}

inline SchemeParams random_params(Rng& rng, const Scenario& sc) {
  const double eta1 = eta1_min(sc);
  const double eta2 = rng.next_double() * (1.0 - eta1);
  const double e2 = rng.next_double() * sc.p2;
  const double eta3 = 1.0 - eta1 - eta2;
  const double e3 = rng.next_double() * (sc.p2 - e2);
  return SchemeParams::make(eta1, eta2, rng.next_double() * 0.99, rng.next_double(),
                            rng.next_double(), eta2 > 1e-12 ? e2 / eta2 : 0.0,
                            eta3 > 1e-12 ? e3 / eta3 : 0.0);
}

// dense random joint pmf over the given cards
inline JointPmf random_pmf(Rng& rng, const std::vector<std::string>& names,
                           const std::vector<int>& cards) {
  std::size_t total = 1;
  for (int c : cards) total *= static_cast<std::size_t>(c);
  std::vector<double> p(total);
  double sum = 0.0;
  for (auto& v : p) {
    v = rng.next_double() + 1e-4;
    sum += v;
  }
  for (auto& v : p) v /= sum;
  // compensate rounding so the validator's 1e-12 budget holds
  double s2 = 0.0;
  for (double v : p) s2 += v;
  p[0] += 1.0 - s2;
  return JointPmf(names, cards, std::move(p));
}

inline CondPmf random_cond(Rng& rng, const std::vector<std::string>& given,
                           const std::vector<int>& gcards,
                           const std::vector<std::string>& target,
                           const std::vector<int>& tcards) {
  std::size_t rows = 1, block = 1;
  for (int c : gcards) rows *= static_cast<std::size_t>(c);
  for (int c : tcards) block *= static_cast<std::size_t>(c);
  std::vector<double> table(rows * block);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t t = 0; t < block; ++t) {
      table[r * block + t] = rng.next_double() + 1e-4;
      sum += table[r * block + t];
    }
    for (std::size_t t = 0; t < block; ++t) table[r * block + t] /= sum;
    double s2 = 0.0;
    for (std::size_t t = 0; t < block; ++t) s2 += table[r * block + t];
    table[r * block] += 1.0 - s2;
  }
  return CondPmf(given, gcards, target, tcards, std::move(table));
}

}  // namespace secrelay::test
