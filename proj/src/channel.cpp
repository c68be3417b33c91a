#include "secrelay/channel.hpp"

#include <cmath>

#include "secrelay/awgn.hpp"

namespace secrelay {

void Geometry::validate() const {
  if (pathloss_exponent <= 0.0) throw std::domain_error("geometry: pathloss exponent must be > 0");
  const Vec2 nodes[4] = {t1, u1, t2, u2};
  const char* names[4] = {"t1", "u1", "t2", "u2"};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (distance(nodes[i], nodes[j]) <= 0.0)
        throw std::domain_error(std::string("geometry: coincident nodes ") + names[i] + " and " +
                                names[j]);
}

ChannelGains ChannelGains::normalized() const {
  if (std::abs(c11) == 0.0) throw std::domain_error("normalize: c11 is zero");
  ChannelGains out;
  out.c11 = c11 / c11;
  out.c12 = c12 / c11;
  out.c21 = c21 / c11;
  out.c22 = c22 / c11;
  out.ctt = ctt / c11;
  return out;
}

ChannelGains gains_from_geometry(const Geometry& geo, bool normalize) {
  geo.validate();
  auto gain = [&](const Vec2& from, const Vec2& to) {
    return cplx{std::pow(distance(from, to), -geo.pathloss_exponent), 0.0};
  };
  ChannelGains g;
  g.c11 = gain(geo.t1, geo.u1);
  g.c12 = gain(geo.t1, geo.u2);
  g.c21 = gain(geo.t2, geo.u1);
  g.c22 = gain(geo.t2, geo.u2);
  g.ctt = gain(geo.t1, geo.t2);
  return normalize ? g.normalized() : g;
}

EquivalentChannels equivalent_channels(const ChannelGains& g, const SchemeParams& params,
                                       double p1) {
  if (p1 <= 0.0) throw std::domain_error("equivalent_channels: p1 must be > 0");
  const cplx rot = std::exp(cplx{0.0, -g.phi21()});
  const double relay2 = (1.0 - params.rho2) * params.gamma * params.p2_2;
  const double relay3 = (1.0 - params.rho3) * params.p2_3;
  EquivalentChannels eq;
  eq.c11_p2 = g.c11 + g.c21 * rot * std::sqrt(relay2 / p1);
  eq.c12_p2 = g.c12 + g.c22 * rot * std::sqrt(relay2 / p1);
  eq.c11_p3 = g.c11 + g.c21 * rot * std::sqrt(relay3 / p1);
  eq.c12_p3 = g.c12 + g.c22 * rot * std::sqrt(relay3 / p1);
  return eq;
}

StandardizedChannel standardize(const ChannelGains& g, double p1, double p2) {
  if (std::abs(g.c11) == 0.0) throw std::domain_error("standardize: zero direct gain c11");
  if (std::abs(g.c22) == 0.0) throw std::domain_error("standardize: zero direct gain c22");
  StandardizedChannel std_ch;
  std_ch.a = (g.c21 / g.c22) * std::exp(cplx{0.0, -std::arg(g.c11) + std::arg(g.c21)});
  std_ch.b = cplx{std::abs(g.c12) / std::abs(g.c11), 0.0};
  std_ch.p1_tilde = std::norm(g.c11) * p1;
  std_ch.p2_tilde = std::norm(g.c22) * p2;
  return std_ch;
}

}  // namespace secrelay
