#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "halo/geometry.hpp"
#include "halo/quadrature.hpp"
#include "halo/rng.hpp"

namespace halo {

// Axis-aligned rectangle strictly inside the upper half-plane. Integration
// domains must keep a positive distance from the boundary y = 0, where the
// invariant measure blows up.
struct RectDomain {
  double x_lo = -1.0, x_hi = 1.0;
  double y_lo = 0.5, y_hi = 2.0;

  RectDomain() = default;
  RectDomain(double xl, double xh, double yl, double yh)
      : x_lo(xl), x_hi(xh), y_lo(yl), y_hi(yh) {
    if (!(std::isfinite(xl) && std::isfinite(xh) && std::isfinite(yl) && std::isfinite(yh)))
      throw std::invalid_argument("RectDomain: bounds must be finite");
    if (!(xh > xl) || !(yh > yl))
      throw std::invalid_argument("RectDomain: requires x_lo < x_hi and y_lo < y_hi");
    if (!(yl > 0.0))
      throw std::invalid_argument("RectDomain: rectangle must not touch y = 0");
  }

  bool contains(const UhpPoint& z) const {
    return z.re >= x_lo && z.re <= x_hi && z.im >= y_lo && z.im <= y_hi;
  }
  bool contains(const RectDomain& r) const {
    return r.x_lo >= x_lo && r.x_hi <= x_hi && r.y_lo >= y_lo && r.y_hi <= y_hi;
  }
};

struct AreaQuadConfig {
  RectDomain rect;
  int nx = 512;
  int ny = 512;
  Rule rule = Rule::midpoint;
};

// Tensor-product quadrature of  integral f(z) dx dy / y^2  over cfg.rect.
// The y direction is discretized uniformly in log y.
template <class F>
double hyp_area(F&& f, const AreaQuadConfig& cfg) {
  const Grid1d gx = uniform_grid(cfg.rect.x_lo, cfg.rect.x_hi, cfg.nx, cfg.rule);
  const Grid1d gy = log_grid(cfg.rect.y_lo, cfg.rect.y_hi, cfg.ny, cfg.rule);
  double total = 0.0;
  for (std::size_t j = 0; j < gy.size(); ++j) {
    const double y = gy.node[j];
    const double wy = gy.weight[j] / (y * y);
    double row = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
      row += gx.weight[i] * f(UhpPoint(gx.node[i], y));
    total += wy * row;
  }
  return total;
}

// Monte Carlo integral of f against the invariant measure over rect,
// sampling directly from the (normalized) invariant measure: x uniform and
// y by inverting the CDF of dy / y^2. Bounded integrands then give bounded
// estimator variance regardless of how close y_lo sits to 0, which a
// uniform-in-(x, y) sampler cannot achieve.
template <class F>
McEstimate hyp_area_mc(F&& f, const RectDomain& rect, long samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("hyp_area_mc: requires samples >= 2");
  const double inv_lo = 1.0 / rect.y_lo;
  const double inv_hi = 1.0 / rect.y_hi;
  const double mass = (rect.x_hi - rect.x_lo) * (inv_lo - inv_hi);
  SplitMix64 rng(seed);
  double s1 = 0.0, s2 = 0.0;
  for (long k = 0; k < samples; ++k) {
    const double x = rng.uniform(rect.x_lo, rect.x_hi);
    const double y = 1.0 / (inv_lo - rng.uniform() * (inv_lo - inv_hi));
    const double v = f(UhpPoint(x, y));
    s1 += v;
    s2 += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = s1 / n;
  const double var = std::max(0.0, (s2 / n - mean * mean)) * n / (n - 1.0);
  return {mass * mean, mass * std::sqrt(var / n)};
}

// area(B(c, r)) = 2*pi*(cosh r - 1); the sinh^2 form avoids cancellation for
// small r. Independent of the center (the metric is homogeneous).
inline double ball_area_closed_form(double r) {
  if (!(std::isfinite(r) && r >= 0.0))
    throw std::invalid_argument("ball_area_closed_form: requires r >= 0");
  const double s = std::sinh(0.5 * r);
  return 4.0 * std::numbers::pi * s * s;
}

inline double annulus_area_closed_form(double r_in, double r_out) {
  if (!(r_out >= r_in && r_in >= 0.0))
    throw std::invalid_argument("annulus_area_closed_form: requires 0 <= r_in <= r_out");
  const double si = std::sinh(0.5 * r_in), so = std::sinh(0.5 * r_out);
  return 4.0 * std::numbers::pi * (so * so - si * si);
}

// Deterministic quadrature for the area of a geodesic ball, independent of
// the closed form above (used to cross-check it).
//
// The ball about x0 + i y0 of radius r is the Euclidean disk with
// y in [y0 e^{-r}, y0 e^{r}] and horizontal chord 2 sqrt((y0 e^r - y)(y - y0 e^{-r}))
// at height y, so
//   area = integral_{y0 e^{-r}}^{y0 e^{r}} 2 sqrt((y0 e^r - y)(y - y0 e^{-r})) / y^2 dy.
// Substituting y = e^tau, tau = log y0 - r cos(psi) turns this into a smooth
// periodic-type integral over psi in [0, pi]:
//   area = integral_0^pi 2 sqrt((y0 e^r - y)(y - y0 e^{-r})) r sin(psi) / y dpsi,
// which the midpoint rule resolves to near machine precision with modest n
// even for large r (the factored radicand avoids cancellation at the
// endpoints, where the sqrt vanishes like sin(psi)).
inline double ball_area(const HypBall& ball, int n = 2048) {
  if (n < 8) throw std::invalid_argument("ball_area: requires n >= 8");
  const double y0 = ball.center.im;
  const double r = ball.radius;
  const double log_y0 = std::log(y0);
  const double y_top = y0 * std::exp(r);
  const double y_bot = y0 * std::exp(-r);
  const double h = std::numbers::pi / n;
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double psi = (j + 0.5) * h;
    const double y = std::exp(log_y0 - r * std::cos(psi));
    const double rad = std::max(0.0, (y_top - y) * (y - y_bot));
    total += 2.0 * std::sqrt(rad) * r * std::sin(psi) / y;
  }
  return total * h;
}

// area(B(c, 2r)) / area(B(c, r)), evaluated with the deterministic ball-area
// quadrature. Closed form: 4 cosh^2(r/2); grows like e^r, so no uniform
// doubling constant exists over all radii.
inline double doubling_ratio(double r, int n = 2048) {
  if (!(std::isfinite(r) && r > 0.0))
    throw std::invalid_argument("doubling_ratio: requires r > 0");
  const UhpPoint c = uhp_i();
  return ball_area(HypBall(c, 2.0 * r), n) / ball_area(HypBall(c, r), n);
}

// sup over r in (0, b] of area(B(c, tau r)) / area(B(c, r)). The ratio is
// increasing in r, so the sup sits at r = b; it is still evaluated on a
// log-spaced grid so the returned value and the scan used by callers agree.
inline double growth_constant(double tau, double b, int r_samples = 64, int quad_nodes = 2048) {
  if (!(std::isfinite(tau) && tau >= 1.0))
    throw std::invalid_argument("growth_constant: requires tau >= 1");
  if (!(std::isfinite(b) && b > 0.0))
    throw std::invalid_argument("growth_constant: requires b > 0");
  if (r_samples < 1) throw std::invalid_argument("growth_constant: requires r_samples >= 1");
  const UhpPoint c = uhp_i();
  double best = 1.0;
  const double lo = std::log(b * 1e-3), hi = std::log(b);
  for (int k = 0; k < r_samples; ++k) {
    const double r = std::exp(r_samples == 1 ? hi : lo + (hi - lo) * k / (r_samples - 1.0));
    const double ratio = ball_area(HypBall(c, tau * r), quad_nodes) /
                         ball_area(HypBall(c, r), quad_nodes);
    if (ratio > best) best = ratio;
  }
  return best;
}

}  // namespace halo
