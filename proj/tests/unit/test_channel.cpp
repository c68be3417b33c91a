#include <doctest.h>

#include "helpers.hpp"
#include "secrelay/experiments.hpp"

using namespace secrelay;

TEST_CASE("path-loss gains from geometry") {
  Geometry geo;
  geo.t1 = {0.0, 0.0};
  geo.u1 = {1.0, 0.0};
  geo.t2 = {0.5, 0.0};
  geo.u2 = {1.0, -1.0};

  const ChannelGains raw = gains_from_geometry(geo, false);
  CHECK(std::abs(raw.c11) == doctest::Approx(1.0).epsilon(1e-12));          // unit distance
  CHECK(std::abs(raw.ctt) == doctest::Approx(8.0).epsilon(1e-12));          // 0.5^-3
  CHECK(std::abs(raw.c12) == doctest::Approx(0.35355339059327376).epsilon(1e-12));
  CHECK(raw.phi21() == doctest::Approx(0.0));

  SUBCASE("normalization is idempotent") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
      Geometry g = geo;
      g.t2 = {0.1 + 0.8 * rng.next_double(), -0.5 + rng.next_double()};
      g.pathloss_exponent = 2.0 + 2.0 * rng.next_double();
      const ChannelGains once = gains_from_geometry(g, true);
      const ChannelGains twice = once.normalized();
      CHECK(std::abs(once.c11) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(std::abs(twice.c12 - once.c12) < 1e-14);
      CHECK(std::abs(twice.ctt - once.ctt) < 1e-13);
    }
  }

  SUBCASE("decodability predicate is invariant under normalization") {
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
      Geometry g = geo;
      g.t2 = {2.2 * rng.next_double() - 0.6, 1.5 * rng.next_double() - 0.75};
      if (distance(g.t1, g.t2) < 1e-3) continue;
      const ChannelGains raw_g = gains_from_geometry(g, false);
      CHECK(raw_g.decodable() == raw_g.normalized().decodable());
    }
  }

  SUBCASE("coincident nodes are rejected") {
    Geometry g = geo;
    g.t2 = g.t1;
    CHECK_THROWS_AS(gains_from_geometry(g), std::domain_error);
    Geometry g2 = geo;
    g2.pathloss_exponent = 0.0;
    CHECK_THROWS_AS(gains_from_geometry(g2), std::domain_error);
  }
}

TEST_CASE("relay-combined equivalent channels") {
  ChannelGains g;
  g.c11 = 1.0;
  g.c12 = 0.4;
  g.c21 = 0.05;
  g.c22 = 0.6;
  g.ctt = 5.0;
  const double p1 = 10.0;

  SchemeParams p;
  p.eta1 = 0.3;
  p.eta2 = 0.4;
  p.eta3 = 0.3;

  SUBCASE("zero relay power leaves the channel untouched") {
    p.rho2 = 1.0;  // all jamming
    p.gamma = 1.0;
    p.p2_2 = 50.0;
    auto eq = equivalent_channels(g, p, p1);
    CHECK(std::abs(eq.c11_p2 - g.c11) < 1e-15);
    CHECK(std::abs(eq.c12_p2 - g.c12) < 1e-15);

    p.rho2 = 0.0;
    p.gamma = 0.0;  // zero relay fraction
    eq = equivalent_channels(g, p, p1);
    CHECK(std::abs(eq.c11_p2 - g.c11) < 1e-15);
  }

  SUBCASE("direct evaluation") {
    p.rho2 = 0.0;
    p.gamma = 1.0;
    p.p2_2 = p1;
    auto eq = equivalent_channels(g, p, p1);
    CHECK(eq.c11_p2.real() == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(eq.c11_p2.imag() == doctest::Approx(0.0));
  }

  SUBCASE("zero p1 is a domain error") {
    CHECK_THROWS_AS(equivalent_channels(g, p, 0.0), std::domain_error);
  }

  SUBCASE("complex gains keep the rotation") {
    ChannelGains gc = g;
    gc.c21 = cplx{0.03, 0.04};  // |c21| = 0.05
    p.rho2 = 0.0;
    p.gamma = 1.0;
    p.p2_2 = p1;
    auto eq = equivalent_channels(gc, p, p1);
    // c21 * e^{-j phi21} is real |c21|
    CHECK(eq.c11_p2.real() == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(std::abs(eq.c11_p2.imag()) < 1e-15);
  }

  SUBCASE("continuity under grid refinement") {
    auto max_adjacent_diff = [&](int n) {
      double worst = 0.0;
      for (int i = 0; i + 1 <= n; ++i) {
        SchemeParams a = p, b = p;
        a.gamma = static_cast<double>(i) / n;
        b.gamma = static_cast<double>(i + 1) / n;
        a.rho2 = b.rho2 = 0.25;
        a.p2_2 = b.p2_2 = 40.0;
        const auto ea = equivalent_channels(g, a, p1);
        const auto eb = equivalent_channels(g, b, p1);
        worst = std::max(worst, std::abs(ea.c11_p2 - eb.c11_p2));
        worst = std::max(worst, std::abs(ea.c12_p2 - eb.c12_p2));
      }
      return worst;
    };
    const double coarse = max_adjacent_diff(64);
    const double fine = max_adjacent_diff(128);
    CHECK(fine <= 0.75 * coarse + 1e-12);
  }

  SUBCASE("magnitude nondecreasing in relay power for co-phased gains") {
    double prev = 0.0;
    for (int i = 0; i <= 20; ++i) {
      SchemeParams q = p;
      q.rho2 = 0.0;
      q.gamma = 1.0;
      q.p2_2 = 5.0 * i;
      const double mag = std::abs(equivalent_channels(g, q, p1).c11_p2);
      CHECK(mag >= prev - 1e-12);
      prev = mag;
    }
  }
}

TEST_CASE("standardized channel form") {
  SUBCASE("bound-comparison channel maps to (0.1, 0.9)") {
    const ChannelGains g = bound_gap_gains();
    const StandardizedChannel s = standardize(g, 10.0, 50.0);
    CHECK(std::abs(s.a) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(std::abs(s.b) == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(s.p1_tilde == doctest::Approx(10.0));
    CHECK(s.p2_tilde == doctest::Approx(5.0 * 50.0));
  }

  SUBCASE("direct amplitude ratio") {
    ChannelGains g;
    g.c11 = 1.0;
    g.c12 = 0.3;
    g.c21 = 0.05;
    g.c22 = 0.5;
    g.ctt = 2.0;
    const StandardizedChannel s = standardize(g, 1.0, 1.0);
    CHECK(std::abs(s.a) == doctest::Approx(0.1).epsilon(1e-12));
  }

  SUBCASE("zero cross gains give a = b = 0") {
    ChannelGains g;
    g.c11 = 1.0;
    g.c22 = 1.0;
    g.c12 = 0.0;
    g.c21 = 0.0;
    g.ctt = 2.0;
    const StandardizedChannel s = standardize(g, 1.0, 1.0);
    CHECK(std::abs(s.a) == 0.0);
    CHECK(std::abs(s.b) == 0.0);
  }

  SUBCASE("zero direct gains are domain errors") {
    ChannelGains g;
    g.c11 = 0.0;
    g.c22 = 1.0;
    CHECK_THROWS_AS(standardize(g, 1.0, 1.0), std::domain_error);
    g.c11 = 1.0;
    g.c22 = 0.0;
    CHECK_THROWS_AS(standardize(g, 1.0, 1.0), std::domain_error);
  }
}
