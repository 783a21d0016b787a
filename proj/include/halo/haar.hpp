#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "halo/area.hpp"
#include "halo/quadrature.hpp"
#include "halo/sl2.hpp"

namespace halo {

// Truncation box and node counts for integration over SL(2, R) in Iwasawa
// coordinates g = n(x) a(y) k(theta). The Haar measure is normalized as
//   dnu(g) = (dx dy / y^2) * (dtheta / 2 pi),
// so the angular fiber carries total mass 1 and integration of a right-
// rotation-invariant function factors through the half-plane with constant 1.
struct HaarConfig {
  double x_lo = -8.0, x_hi = 8.0;
  double y_lo = std::exp(-4.0), y_hi = std::exp(4.0);
  int nx = 128, ny = 128, ntheta = 64;
  Rule rule = Rule::midpoint;  // x and log-y directions; theta is always periodic midpoint

  RectDomain rect() const { return RectDomain(x_lo, x_hi, y_lo, y_hi); }
};

// Quadrature of  integral F(g) dnu(g)  over the box. The group element at a
// node is assembled as the explicit matrix product n(x) a(y) k(theta), so F
// sees honest matrices rather than coordinate triples.
template <class F>
double haar_integrate(F&& f, const HaarConfig& cfg) {
  const RectDomain rect = cfg.rect();  // validates the box
  const Grid1d gx = uniform_grid(rect.x_lo, rect.x_hi, cfg.nx, cfg.rule);
  const Grid1d gy = log_grid(rect.y_lo, rect.y_hi, cfg.ny, cfg.rule);
  const Grid1d gt = periodic_grid(cfg.ntheta);
  const double two_pi = 2.0 * std::numbers::pi;

  double total = 0.0;
  for (std::size_t j = 0; j < gy.size(); ++j) {
    const double y = gy.node[j];
    const double ry = std::sqrt(y);
    const double wy = gy.weight[j] / (y * y);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double x = gx.node[i];
      const double wxy = wy * gx.weight[i];
      const double xr = x / ry;
      double fiber = 0.0;
      for (std::size_t t = 0; t < gt.size(); ++t) {
        const double c = std::cos(gt.node[t]);
        const double s = std::sin(gt.node[t]);
        // n(x) a(y) k(theta) = [[ry c + (x/ry) s, -ry s + (x/ry) c], [s/ry, c/ry]]
        const Mat2 g(ry * c + xr * s, -ry * s + xr * c, s / ry, c / ry);
        fiber += gt.weight[t] * f(g);
      }
      total += wxy * fiber / two_pi;
    }
  }
  return total;
}

// Projection of the same normalization to the half-plane: for phi defined on
// points,  integral phi(z) dx dy / y^2  over the rectangle. With the
// normalization above, haar_integrate(g -> phi(g.i)) over a box and
// quotient_integral(phi) over the matching rectangle estimate the same
// number.
template <class F>
double quotient_integral(F&& phi, const AreaQuadConfig& cfg) {
  return hyp_area(std::forward<F>(phi), cfg);
}

// Compares integral F(g) dnu with integral F(u^{-1} g u) dnu for an
// orthogonal u. Conjugation by u preserves the Haar measure (the group is
// unimodular), so the two values agree up to quadrature error provided the
// box captures the supports of both integrands. Returns {I, I_conjugated}.
template <class F>
std::pair<double, double> check_unimodular(F&& f, const Mat2& u, const HaarConfig& cfg) {
  if (!is_orthogonal(u))
    throw std::invalid_argument("check_unimodular: u must be orthogonal");
  const Mat2 ut = u.transpose();
  const double direct = haar_integrate(f, cfg);
  const double conjugated =
      haar_integrate([&](const Mat2& g) { return f(ut * g * u); }, cfg);
  return {direct, conjugated};
}

}  // namespace halo
