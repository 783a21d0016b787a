#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace halo {

// Point of the open upper half-plane {z : Im z > 0} carrying the metric of
// constant curvature -1,  ds^2 = (dx^2 + dy^2) / y^2.
struct UhpPoint {
  double re = 0.0;
  double im = 1.0;

  UhpPoint() = default;
  UhpPoint(double re_, double im_) : re(re_), im(im_) {
    if (!(std::isfinite(re) && std::isfinite(im) && im > 0.0))
      throw std::invalid_argument("UhpPoint: coordinates must be finite with Im > 0");
  }
  explicit UhpPoint(std::complex<double> z) : UhpPoint(z.real(), z.imag()) {}

  std::complex<double> cplx() const { return {re, im}; }
};

inline UhpPoint uhp_i() { return UhpPoint(0.0, 1.0); }

// Reflection across the imaginary axis, z -> -conj(z).
// Orientation-reversing isometry; fixes i.
inline UhpPoint mirror(const UhpPoint& z) { return UhpPoint(-z.re, z.im); }

// Geodesic distance,  rho(z, w) = arccosh(1 + |z-w|^2 / (2 Im z Im w)).
// Evaluated as log1p(t + sqrt(t(t+2))) which keeps full relative accuracy
// for nearby points where arccosh(1 + t) cancels.
inline double hyp_distance(const UhpPoint& z, const UhpPoint& w) {
  const double dx = z.re - w.re;
  const double dy = z.im - w.im;
  const double t = (dx * dx + dy * dy) / (2.0 * z.im * w.im);
  return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

struct HypBall {
  UhpPoint center;
  double radius = 1.0;

  HypBall() = default;
  HypBall(const UhpPoint& c, double r) : center(c), radius(r) {
    if (!(std::isfinite(r) && r > 0.0))
      throw std::invalid_argument("HypBall: radius must be finite and > 0");
  }
  bool contains(const UhpPoint& z) const { return hyp_distance(center, z) <= radius; }
};

// A geodesic ball is a Euclidean disk. For center x0 + i y0 and radius r the
// Euclidean picture has center (x0, y0 cosh r) and radius y0 sinh r: the
// extreme points of the ball on the vertical line x = x0 are y0 e^{+-r}, and
// the Euclidean center is their midpoint.
struct EuclideanCircle {
  double center_x = 0.0;
  double center_y = 1.0;
  double radius = 0.0;
};

inline EuclideanCircle euclidean_circle(const HypBall& b) {
  return {b.center.re, b.center.im * std::cosh(b.radius), b.center.im * std::sinh(b.radius)};
}

// Parameters of the local geometry hypotheses used by the atom machinery:
// balls of radius <= b are the "small" balls, pairs at distance > R0 admit a
// near-midpoint ball of radius beta * distance, and tau is the dilation
// factor whose area growth is tracked by growth_constant().
struct GeometryAssumptions {
  double b = 1.0;
  double R0 = 0.0;
  double beta_amp = 0.75;
  double tau = 2.0;

  GeometryAssumptions() = default;
  GeometryAssumptions(double b_, double R0_, double beta_, double tau_)
      : b(b_), R0(R0_), beta_amp(beta_), tau(tau_) {
    if (!(std::isfinite(b) && b > 0.0))
      throw std::invalid_argument("GeometryAssumptions: b must be positive");
    if (!(R0 >= 0.0 && R0 < 1.0))
      throw std::invalid_argument("GeometryAssumptions: R0 must lie in [0, 1)");
    if (!(beta_amp > 0.5 && beta_amp < 1.0))
      throw std::invalid_argument("GeometryAssumptions: beta_amp must lie in (1/2, 1)");
    if (!(tau >= 2.0))
      throw std::invalid_argument("GeometryAssumptions: tau must be >= 2");
  }
};

// Midpoint of the geodesic segment [z, w].
//
// If Re z == Re w the geodesic is the vertical line and the midpoint is at
// the geometric mean height. Otherwise the geodesic is the semicircle
// centered at c on the real axis through both points; the Moebius map
// zeta -> (zeta + (R - c)) / (-zeta + (R + c)) sends its endpoints c - R, c + R
// to 0, infinity, hence the semicircle to the imaginary axis, where the
// midpoint is again the geometric mean. R -+ c is formed from
// (R^2 - c^2) / (R +- c) when the direct difference would cancel.
inline UhpPoint geodesic_midpoint(const UhpPoint& z, const UhpPoint& w) {
  const double dx = z.re - w.re;
  const double scale = std::fabs(z.re) + std::fabs(w.re) + z.im + w.im;
  if (std::fabs(dx) <= 1e-13 * scale)
    return UhpPoint(0.5 * (z.re + w.re), std::sqrt(z.im * w.im));

  const double nz = z.re * z.re + z.im * z.im;
  const double nw = w.re * w.re + w.im * w.im;
  const double c = (nz - nw) / (2.0 * dx);
  const double R = std::hypot(z.re - c, z.im);
  const double r2mc2 = z.re * z.re - 2.0 * c * z.re + z.im * z.im;  // R^2 - c^2
  double rm, rp;  // R - c, R + c
  if (c >= 0.0) {
    rp = R + c;
    rm = r2mc2 / rp;
  } else {
    rm = R - c;
    rp = r2mc2 / rm;
  }

  const std::complex<double> zz = z.cplx(), ww = w.cplx();
  const std::complex<double> z1 = (zz + rm) / (-zz + rp);
  const std::complex<double> w1 = (ww + rm) / (-ww + rp);
  const double h = std::sqrt(z1.imag() * w1.imag());
  // inverse map (up to the positive factor 2R): zeta -> (rp zeta - rm) / (zeta + 1)
  const std::complex<double> m = (rp * std::complex<double>(0.0, h) - rm) /
                                 (std::complex<double>(0.0, h) + 1.0);
  return UhpPoint(m);
}

// Small relative inflation applied to the witness radius so that floating
// point rounding in the midpoint cannot push the endpoints outside the ball.
inline constexpr double kMidpointInflation = 1e-9;

// Ball of radius rho(z,w)/2 (inflated by kMidpointInflation) centered at the
// geodesic midpoint: contains both endpoints and, since beta_amp > 1/2, has
// radius < beta_amp * rho(z, w) whenever rho(z, w) is large enough for the
// inflation to be negligible. Requires rho(z, w) > R0.
inline HypBall midpoint_ball_witness(const UhpPoint& z, const UhpPoint& w,
                                     const GeometryAssumptions& geom) {
  const double d = hyp_distance(z, w);
  if (!(d > geom.R0))
    throw std::domain_error("midpoint_ball_witness: requires rho(z, w) > R0");
  return HypBall(geodesic_midpoint(z, w), 0.5 * d * (1.0 + kMidpointInflation));
}

}  // namespace halo
