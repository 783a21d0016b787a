#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "halo/area.hpp"
#include "halo/geometry.hpp"
#include "halo/kernel.hpp"
#include "halo/sl2.hpp"

namespace halo {

// Parameters of the atomic-decomposition machinery: atoms live on balls of
// radius at most b, tau is the dilation factor used when transplanting
// atoms, and growth is the corresponding area-growth constant (see
// growth_constant()).
struct HardyConfig {
  double b = 1.0;
  double tau = 2.0;
  double growth = 1.0;
  double check_tol = 1e-9;

  HardyConfig() = default;
  HardyConfig(double b_, double tau_, double growth_, double tol = 1e-9)
      : b(b_), tau(tau_), growth(growth_), check_tol(tol) {
    if (!(b > 0.0)) throw std::invalid_argument("HardyConfig: b must be positive");
    if (!(tau >= 2.0)) throw std::invalid_argument("HardyConfig: tau must be >= 2");
    if (!(growth >= 1.0)) throw std::invalid_argument("HardyConfig: growth must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("HardyConfig: tolerance must be positive");
  }
};

// One radial layer of an atom: constant value on r_in <= rho < r_out.
struct AnnulusPiece {
  double r_in = 0.0;
  double r_out = 1.0;
  double value = 0.0;
};

// Piecewise-constant radial function supported on a geodesic ball:
// a(z) = piece.value on the annulus r_in <= rho(z, center) < r_out.
// Construction checks only the layer geometry (ordered, disjoint, inside
// the ball); the analytic conditions of a valid atom (size bound and
// vanishing mean) are the business of atom_check, so that deliberately
// broken atoms can be built and diagnosed.
struct Atom {
  HypBall ball;
  std::vector<AnnulusPiece> pieces;

  Atom() = default;
  Atom(const HypBall& b, std::vector<AnnulusPiece> ps) : ball(b), pieces(std::move(ps)) {
    if (pieces.empty()) throw std::invalid_argument("Atom: needs at least one piece");
    std::sort(pieces.begin(), pieces.end(),
              [](const AnnulusPiece& l, const AnnulusPiece& r) { return l.r_in < r.r_in; });
    double prev = 0.0;
    for (const AnnulusPiece& p : pieces) {
      if (!(std::isfinite(p.value)))
        throw std::invalid_argument("Atom: piece value must be finite");
      if (!(p.r_in >= 0.0 && p.r_out > p.r_in))
        throw std::invalid_argument("Atom: piece radii must satisfy 0 <= r_in < r_out");
      if (p.r_in < prev - 1e-15)
        throw std::invalid_argument("Atom: pieces must not overlap");
      if (p.r_out > ball.radius * (1.0 + 1e-12))
        throw std::invalid_argument("Atom: pieces must stay inside the ball");
      prev = p.r_out;
    }
  }
};

// Pointwise evaluation; annuli are half-open [r_in, r_out).
inline double atom_value(const Atom& a, const UhpPoint& z) {
  const double rho = hyp_distance(a.ball.center, z);
  for (const AnnulusPiece& p : a.pieces)
    if (rho >= p.r_in && rho < p.r_out) return p.value;
  return 0.0;
}

struct AtomCheckReport {
  bool support_ok = false;   // ball radius <= b (layer geometry is enforced at construction)
  bool size_ok = false;      // max |value| <= (1 + tol) / area(ball)
  bool mean_ok = false;      // |integral| <= tol * integral of |a|
  double size_slack = 0.0;   // max |value| * area(ball) - 1
  double mean_residual = 0.0;  // |integral a| / integral |a| (0 for the zero atom)
  bool pass() const { return support_ok && size_ok && mean_ok; }
};

// Verifies the defining conditions of an atom against the closed-form
// annulus areas: support radius at most cfg.b, sup bound 1/area(ball), and
// zero mean. The mean uses exactly the same area evaluations as the bound
// checks, so cancellation is tested as stated rather than through an
// independent quadrature's error.
inline AtomCheckReport atom_check(const Atom& a, const HardyConfig& cfg) {
  AtomCheckReport rep;
  rep.support_ok = a.ball.radius <= cfg.b * (1.0 + 1e-12);
  const double full_area = ball_area_closed_form(a.ball.radius);
  double max_abs = 0.0, mean = 0.0, abs_mass = 0.0;
  for (const AnnulusPiece& p : a.pieces) {
    max_abs = std::max(max_abs, std::fabs(p.value));
    const double area = annulus_area_closed_form(p.r_in, p.r_out);
    mean += p.value * area;
    abs_mass += std::fabs(p.value) * area;
  }
  rep.size_slack = max_abs * full_area - 1.0;
  rep.size_ok = rep.size_slack <= cfg.check_tol;
  rep.mean_residual = abs_mass > 0.0 ? std::fabs(mean) / abs_mass : 0.0;
  rep.mean_ok = rep.mean_residual <= cfg.check_tol;
  return rep;
}

// Construction below refuses annuli thinner than this fraction of the ball
// area: the inner/outer balance degenerates and rounding noise in the areas
// would dominate the stored values.
inline constexpr double kMinAnnulusFraction = 1e-6;

// Two-layer atom on B(center, r): value alpha on [0, r_in), beta on
// [r_in, r), balanced so the mean vanishes exactly (by the same closed-form
// areas atom_check uses) while the larger layer sits at the size cap
// 1/area(ball). The smaller-area layer always receives the cap so the
// balancing value never exceeds it.
inline Atom make_radial_atom(const UhpPoint& center, double r, double r_in) {
  if (!(std::isfinite(r) && std::isfinite(r_in) && r > 0.0 && r_in > 0.0 && r_in < r))
    throw std::invalid_argument("make_radial_atom: requires 0 < r_in < r");
  const double a_ball = ball_area_closed_form(r);
  const double a_in = ball_area_closed_form(r_in);
  const double a_ann = a_ball - a_in;
  if (a_ann < kMinAnnulusFraction * a_ball || a_in < kMinAnnulusFraction * a_ball)
    throw std::invalid_argument("make_radial_atom: layer too thin to balance reliably");
  const double cap = 1.0 / a_ball;
  double alpha, beta;
  if (a_in <= a_ann) {
    alpha = cap;
    beta = -cap * a_in / a_ann;
  } else {
    beta = cap;
    alpha = -cap * a_ann / a_in;
  }
  return Atom(HypBall(center, r), {{0.0, r_in, alpha}, {r_in, r, beta}});
}

// a composed with the rotation z -> conjugate_action(rotation(theta), z).
// Rotations about i are isometries, so distances to the transported center
// are preserved: the composed function is again an atom with the same
// layers on the ball about the preimage of the center, and all atom_check
// quantities are unchanged. No rescaling is applied: the transporting map
// here is measure-preserving, so the size cap stays exact.
inline Atom atom_pushforward(const Atom& a, double theta) {
  // (a o r_theta)(z) depends on rho(r_theta(z), c) = rho(z, r_theta^{-1}(c))
  const UhpPoint new_center = rotate_about_i(-theta, a.ball.center);
  return Atom(HypBall(new_center, a.ball.radius), a.pieces);
}

struct AtomTerm {
  double coef = 0.0;
  Atom atom;
};

// Finite linear combination sum coef_j * atom_j.
struct AtomicDecomposition {
  std::vector<AtomTerm> terms;
};

inline double decomposition_value(const AtomicDecomposition& d, const UhpPoint& z) {
  double v = 0.0;
  for (const AtomTerm& t : d.terms) v += t.coef * atom_value(t.atom, z);
  return v;
}

// sum |coef_j|: the atomic-norm upper bound carried by the decomposition.
// Empty decompositions represent the zero function and give 0.
inline double h1_upper_bound(const AtomicDecomposition& d) {
  double s = 0.0;
  for (const AtomTerm& t : d.terms) s += std::fabs(t.coef);
  return s;
}

// Image of a decomposition under a purely atomic angular kernel: each point
// mass w_i delta_{theta_i} sends coef_j * a_j to (coef_j w_i) * (a_j o r_{theta_i}),
// so the image is again an atomic decomposition, with
//   h1_upper_bound(image) <= ||kernel||_TV * h1_upper_bound(input).
// Kernels with a density part are rejected: their images are rotational
// blends, not finite atom sums.
inline AtomicDecomposition hausdorff_on_decomposition(const KernelMeasure& km,
                                                      const AtomicDecomposition& d) {
  if (km.has_density())
    throw std::invalid_argument(
        "hausdorff_on_decomposition: kernel must be purely atomic (no density part)");
  AtomicDecomposition out;
  out.terms.reserve(km.atoms().size() * d.terms.size());
  for (const KernelAtom& ka : km.atoms())
    for (const AtomTerm& t : d.terms)
      out.terms.push_back({t.coef * ka.weight, atom_pushforward(t.atom, ka.theta)});
  return out;
}

}  // namespace halo
