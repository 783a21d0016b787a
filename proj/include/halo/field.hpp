#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "halo/area.hpp"
#include "halo/geometry.hpp"
#include "halo/sl2.hpp"

namespace halo {

// |f| vanishes outside the ball.
struct SupportBall {
  HypBall ball;
};

// |f(z)| <= amplitude * exp(-rate * rho(z, center)^2).
struct GaussianDecay {
  UhpPoint center;
  double amplitude = 1.0;
  double rate = 1.0;
};

using Support = std::variant<SupportBall, GaussianDecay>;

// Scalar function on the half-plane together with a description of where it
// lives. The descriptor is what lets norm quadratures pick truncation
// domains that provably capture the mass they need.
struct Field {
  std::function<double(const UhpPoint&)> eval;
  Support support;

  double operator()(const UhpPoint& z) const { return eval(z); }
};

inline UhpPoint support_center(const Field& f) {
  if (const auto* sb = std::get_if<SupportBall>(&f.support)) return sb->ball.center;
  return std::get<GaussianDecay>(f.support).center;
}

inline bool has_compact_support(const Field& f) {
  return std::holds_alternative<SupportBall>(f.support);
}

// Radius R around the support center outside of which the remaining mass of
// |f|^p is below tail_tol. Compact supports return their exact radius. For
// Gaussian decay the tail integral is bounded by
//   amplitude^p * 2 pi * exp(-p rate R^2 + R) / (p rate 2 R - 1)
// (area element sinh r <= e^r / 2) and R is grown until that bound drops
// below tail_tol.
inline double support_radius(const Field& f, double p, double tail_tol = 1e-9) {
  if (!(p >= 1.0)) throw std::invalid_argument("support_radius: requires p >= 1");
  if (const auto* sb = std::get_if<SupportBall>(&f.support)) return sb->ball.radius;
  const GaussianDecay& g = std::get<GaussianDecay>(f.support);
  if (!(g.rate > 0.0) || !(g.amplitude >= 0.0))
    throw std::invalid_argument("support_radius: Gaussian decay needs rate > 0, amplitude >= 0");
  if (g.amplitude == 0.0) return 1.0;
  const double ap = std::pow(g.amplitude, p);
  double R = 1.0;
  for (int iter = 0; iter < 400; ++iter) {
    const double slope = 2.0 * p * g.rate * R - 1.0;
    if (slope > 0.0) {
      const double tail = ap * 2.0 * std::numbers::pi *
                          std::exp(-p * g.rate * R * R + R) / slope;
      if (tail < tail_tol) return R;
    }
    R *= 1.25;
  }
  throw std::domain_error("support_radius: decay too slow for requested tail tolerance");
}

// Euclidean bounding rectangle of the hyperbolic ball B(center, R (1 + eps) + pad).
inline RectDomain support_rect(const Field& f, double p, double tail_tol = 1e-9,
                               double pad = 0.0) {
  const UhpPoint c = support_center(f);
  const double R = support_radius(f, p, tail_tol) * (1.0 + 1e-12) + pad;
  const EuclideanCircle e = euclidean_circle(HypBall(c, R));
  return RectDomain(e.center_x - e.radius, e.center_x + e.radius,
                    c.im * std::exp(-R), c.im * std::exp(R));
}

namespace detail {

// (1 - s^2)^5 on [-1, 1], zero outside: C^4 across the support edge, so
// fourth-order quadrature rules keep their full rate on integrals of it.
inline double poly_bump(double s) {
  const double t = 1.0 - s * s;
  if (t <= 0.0) return 0.0;
  const double t2 = t * t;
  return t2 * t2 * t;
}

// Smallest hyperbolic ball about `center` certified to contain the
// rectangle, by sampling the boundary (where the distance maximum sits) and
// padding with the largest gap between adjacent samples.
inline HypBall enclosing_ball(const UhpPoint& center, const RectDomain& rect) {
  constexpr int kPerEdge = 64;
  double best = 0.0, gap = 0.0;
  UhpPoint prev = UhpPoint(rect.x_lo, rect.y_lo);
  bool have_prev = false;
  auto visit = [&](double x, double y) {
    const UhpPoint q(x, y);
    best = std::max(best, hyp_distance(center, q));
    if (have_prev) gap = std::max(gap, hyp_distance(prev, q));
    prev = q;
    have_prev = true;
  };
  for (int i = 0; i <= kPerEdge; ++i) {
    const double t = static_cast<double>(i) / kPerEdge;
    visit(rect.x_lo + t * (rect.x_hi - rect.x_lo), rect.y_lo);
  }
  for (int i = 0; i <= kPerEdge; ++i) {
    const double t = static_cast<double>(i) / kPerEdge;
    visit(rect.x_hi, rect.y_lo * std::pow(rect.y_hi / rect.y_lo, t));
  }
  for (int i = 0; i <= kPerEdge; ++i) {
    const double t = static_cast<double>(i) / kPerEdge;
    visit(rect.x_hi - t * (rect.x_hi - rect.x_lo), rect.y_hi);
  }
  for (int i = 0; i <= kPerEdge; ++i) {
    const double t = static_cast<double>(i) / kPerEdge;
    visit(rect.x_lo, rect.y_hi * std::pow(rect.y_lo / rect.y_hi, t));
  }
  return HypBall(center, best + gap + 1e-9);
}

}  // namespace detail

// amp * B((x - x0) / wx) * B((log y - t0) / wt): a C^4 bump supported on the
// rectangle |x - x0| <= wx, |log y - t0| <= wt.
inline Field product_bump(double x0, double t0, double wx, double wt, double amp) {
  if (!(wx > 0.0 && wt > 0.0))
    throw std::invalid_argument("product_bump: widths must be positive");
  Field f;
  f.eval = [=](const UhpPoint& z) {
    return amp * detail::poly_bump((z.re - x0) / wx) *
           detail::poly_bump((std::log(z.im) - t0) / wt);
  };
  const UhpPoint center(x0, std::exp(t0));
  const RectDomain rect(x0 - wx, x0 + wx, std::exp(t0 - wt), std::exp(t0 + wt));
  f.support = SupportBall{detail::enclosing_ball(center, rect)};
  return f;
}

// amp * B(rho(z, center) / radius): rotation-symmetric about its center.
inline Field radial_bump(const UhpPoint& center, double radius, double amp) {
  if (!(radius > 0.0)) throw std::invalid_argument("radial_bump: radius must be positive");
  Field f;
  f.eval = [=](const UhpPoint& z) {
    return amp * detail::poly_bump(hyp_distance(z, center) / radius);
  };
  f.support = SupportBall{HypBall(center, radius)};
  return f;
}

inline Field ball_indicator(const HypBall& ball) {
  Field f;
  f.eval = [ball](const UhpPoint& z) { return ball.contains(z) ? 1.0 : 0.0; };
  f.support = SupportBall{ball};
  return f;
}

inline Field gaussian_field(const UhpPoint& center, double amplitude, double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("gaussian_field: rate must be positive");
  Field f;
  f.eval = [=](const UhpPoint& z) {
    const double r = hyp_distance(z, center);
    return amplitude * std::exp(-rate * r * r);
  };
  f.support = GaussianDecay{center, std::fabs(amplitude), rate};
  return f;
}

inline Field scaled(const Field& f, double factor) {
  Field g;
  auto base = f.eval;
  g.eval = [base, factor](const UhpPoint& z) { return factor * base(z); };
  g.support = f.support;
  if (auto* gd = std::get_if<GaussianDecay>(&g.support)) gd->amplitude *= std::fabs(factor);
  return g;
}

// f composed with the rotation about i by theta. Rotations are isometries
// fixing i, so the support ball rotates with the function.
inline Field compose_rotation(const Field& f, double theta) {
  Field g;
  auto base = f.eval;
  g.eval = [base, theta](const UhpPoint& z) { return base(rotate_about_i(theta, z)); };
  if (const auto* sb = std::get_if<SupportBall>(&f.support)) {
    g.support = SupportBall{
        HypBall(rotate_about_i(-theta, sb->ball.center), sb->ball.radius)};
  } else {
    const GaussianDecay& gd = std::get<GaussianDecay>(f.support);
    g.support = GaussianDecay{rotate_about_i(-theta, gd.center), gd.amplitude, gd.rate};
  }
  return g;
}

// f composed with the mirror reflection. An isometry fixing i as well.
inline Field compose_mirror(const Field& f) {
  Field g;
  auto base = f.eval;
  g.eval = [base](const UhpPoint& z) { return base(mirror(z)); };
  g.support = f.support;
  if (auto* sb = std::get_if<SupportBall>(&g.support))
    sb->ball.center = mirror(sb->ball.center);
  else
    std::get<GaussianDecay>(g.support).center = mirror(std::get<GaussianDecay>(g.support).center);
  return g;
}

}  // namespace halo
