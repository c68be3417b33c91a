#pragma once

#include <complex>

#include "secrelay/common.hpp"

namespace secrelay {

using cplx = std::complex<double>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Node placement on the plane.  t1/u1 are the primary transmitter and
// receiver, t2/u2 the secondary pair.
struct Geometry {
  Vec2 t1, u1, t2, u2;
  double pathloss_exponent = 3.0;

  void validate() const;
};

// Complex link amplitudes, noise normalized to unit variance at every
// receiver.  c11: t1->u1, c12: t1->u2, c21: t2->u1, c22: t2->u2,
// ctt: t1->t2.
struct ChannelGains {
  cplx c11{1.0, 0.0};
  cplx c12{0.0, 0.0};
  cplx c21{0.0, 0.0};
  cplx c22{0.0, 0.0};
  cplx ctt{0.0, 0.0};

  // phase of c21, recomputed from the stored gain
  double phi21() const { return std::arg(c21); }

  // the secondary transmitter can decode the primary message only if its
  // channel from t1 beats the direct link
  bool decodable() const { return std::abs(ctt) > std::abs(c11); }

  // divide every gain by c11 so the direct link has unit amplitude
  ChannelGains normalized() const;
};

// Effective direct/cross gains seen when the relay coherently adds a scaled
// copy of the primary signal during phases 2 and 3.
struct EquivalentChannels {
  cplx c11_p2, c12_p2, c11_p3, c12_p3;
};

// Standard-form interference channel (inputs scaled so both direct gains
// are 1): y1 = x1 + a*x2 + z1, y2 = b*x1 + x2 + z2 with powers p1_tilde,
// p2_tilde.
struct StandardizedChannel {
  cplx a{0.0, 0.0};
  cplx b{0.0, 0.0};
  double p1_tilde = 0.0;
  double p2_tilde = 0.0;
};

// Path-loss gains |c| = d^-alpha with zero phases, then (by default)
// normalized so |c11| = 1.
ChannelGains gains_from_geometry(const Geometry& geo, bool normalize = true);

struct SchemeParams;  // defined in awgn.hpp

EquivalentChannels equivalent_channels(const ChannelGains& g, const SchemeParams& params,
                                       double p1);

StandardizedChannel standardize(const ChannelGains& g, double p1, double p2);

}  // namespace secrelay
