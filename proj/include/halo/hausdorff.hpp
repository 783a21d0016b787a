#pragma once

#include <numbers>
#include <type_traits>
#include <utility>

#include "halo/field.hpp"
#include "halo/geometry.hpp"
#include "halo/kernel.hpp"
#include "halo/sl2.hpp"

namespace halo {

// Rotational averaging operator
//   (H f)(z) = integral density(theta) f(r_theta(z)) dtheta
//            + sum_i w_i f(r_{theta_i}(z)),
// r_theta = rotate_about_i. The density integral uses the kernel's midpoint
// node count; theta -> f(r_theta(z)) is smooth and 2 pi periodic for smooth
// f, so the uniform midpoint rule converges spectrally in the node count.
// Works for any value type with zero-init, +=, and scalar *, in particular
// double and std::complex<double>.
template <class F>
auto hausdorff_apply(const KernelMeasure& km, F&& f, const UhpPoint& z) {
  using V = std::decay_t<decltype(f(z))>;
  V acc{};
  if (km.has_density()) {
    const int n = km.nodes();
    const double h = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
      const double theta = (j + 0.5) * h;
      acc += (h * km.density(theta)) * f(rotate_about_i(theta, z));
    }
  }
  for (const KernelAtom& a : km.atoms())
    acc += a.weight * f(rotate_about_i(a.theta, z));
  return acc;
}

inline double hausdorff_apply(const KernelMeasure& km, const Field& f, const UhpPoint& z) {
  return hausdorff_apply(km, f.eval, z);
}

// Average against a probability-normalized angular measure mu1: the
// generalized Cesaro operator, i.e. the kernel whose angular factor is
// identically 1 so the measure itself is the kernel. cesaro_apply(uniform(1),
// f, .) is the plain rotational average of f about i; it reproduces
// rotation-symmetric functions and is idempotent.
template <class F>
auto cesaro_apply(const KernelMeasure& mu1, F&& f, const UhpPoint& z) {
  return hausdorff_apply(mu1, std::forward<F>(f), z);
}

inline double cesaro_apply(const KernelMeasure& mu1, const Field& f, const UhpPoint& z) {
  return hausdorff_apply(mu1, f.eval, z);
}

// Kernel on the full orthogonal group: one angular measure for the rotation
// component, one for the reflection component.
struct O2Kernel {
  KernelMeasure rotation_part;
  KernelMeasure reflection_part;
};

// Averaging over both components of the orthogonal group, evaluated through
// matrix conjugation (conjugate_action) rather than the reduced rotation
// formula:
//   (H f)(z) = integral f((k(t)^{-1} x(z) k(t)).i) drot(t)
//            + integral f((v(t)^{-1} x(z) v(t)).i) drefl(t).
// The rotation component coincides with hausdorff_apply(rotation_part, f, .).
// The reflection component does NOT reduce to the same formula with the
// angles folded in: conjugation by v(t) lands on the mirror image of the
// rotation case (conjugate_action(v(t), z) == mirror(conjugate_action(k(t), z))),
// so it equals hausdorff_apply(reflection_part, f o mirror, .). See the
// operator tests for both identities.
template <class F>
auto hausdorff_apply_general(const O2Kernel& kernel, F&& f, const UhpPoint& z) {
  using V = std::decay_t<decltype(f(z))>;
  V acc{};
  const auto component = [&](const KernelMeasure& km, bool reflect) {
    if (km.has_density()) {
      const int n = km.nodes();
      const double h = 2.0 * std::numbers::pi / n;
      for (int j = 0; j < n; ++j) {
        const double theta = (j + 0.5) * h;
        const Mat2 u = reflect ? reflection(theta) : rotation(theta).mat();
        acc += (h * km.density(theta)) * f(conjugate_action(u, z));
      }
    }
    for (const KernelAtom& a : km.atoms()) {
      const Mat2 u = reflect ? reflection(a.theta) : rotation(a.theta).mat();
      acc += a.weight * f(conjugate_action(u, z));
    }
  };
  component(kernel.rotation_part, false);
  component(kernel.reflection_part, true);
  return acc;
}

inline double hausdorff_apply_general(const O2Kernel& kernel, const Field& f,
                                      const UhpPoint& z) {
  return hausdorff_apply_general(kernel, f.eval, z);
}

// H f as a Field. |H f(z)| is bounded by the kernel mass times the sup of
// |f| over the rotated orbit, and supp(H f) sits inside the ball about i of
// radius rho(center, i) + support radius, since rotations preserve distance
// to i. Requires compact support.
inline Field hausdorff_field(const KernelMeasure& km, const Field& f) {
  if (!has_compact_support(f))
    throw std::invalid_argument("hausdorff_field: requires a compactly supported field");
  const auto* sb = std::get_if<SupportBall>(&f.support);
  const double reach = hyp_distance(sb->ball.center, uhp_i()) + sb->ball.radius;
  Field g;
  auto base = f.eval;
  g.eval = [km, base](const UhpPoint& z) { return hausdorff_apply(km, base, z); };
  g.support = SupportBall{HypBall(uhp_i(), reach + 1e-9)};
  return g;
}

}  // namespace halo
