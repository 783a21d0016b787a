#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "halo/area.hpp"
#include "halo/field.hpp"
#include "halo/hausdorff.hpp"
#include "halo/kernel.hpp"
#include "halo/quadrature.hpp"

namespace halo {

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

// Relative slack allowed when comparing quadrature values of norms against
// analytic bounds: both sides of a comparison carry discretization error, so
// exact inequalities are verified up to this factor.
inline constexpr double kLpQuadTolerance = 1e-3;

struct LpConfig {
  double p = 2.0;
  RectDomain rect;
  int nx = 512;
  int ny = 512;
  Rule rule = Rule::simpson;
  double tail_tol = 1e-9;
};

namespace detail {

// Deterministic local refinement of a grid maximum: repeatedly scans a 5x5
// stencil around the incumbent and halves the stencil radius. For a C^2
// integrand this converges to the local maximum value quadratically in the
// cell size; it exists because comparing a shifted function's grid maximum
// against an unshifted one at 1e-3 precision would otherwise be dominated
// by the sampling offset, not by the functions.
template <class F2>
double refine_max(F2&& f, double u0, double v0, double hu, double hv, int iters = 34) {
  double bu = u0, bv = v0, best = f(u0, v0);
  for (int it = 0; it < iters; ++it) {
    double cu = bu, cv = bv;
    for (int i = -2; i <= 2; ++i) {
      for (int j = -2; j <= 2; ++j) {
        if (i == 0 && j == 0) continue;
        const double u = bu + 0.5 * i * hu;
        const double v = bv + 0.5 * j * hv;
        const double val = f(u, v);
        if (val > best) {
          best = val;
          cu = u;
          cv = v;
        }
      }
    }
    bu = cu;
    bv = cv;
    hu *= 0.5;
    hv *= 0.5;
  }
  return best;
}

struct TopCells {
  // keeps the k best (value, u, v) triples seen
  std::vector<double> val, u, v;
  void offer(double value, double uu, double vv, std::size_t k = 3) {
    if (val.size() < k) {
      val.push_back(value);
      u.push_back(uu);
      v.push_back(vv);
      return;
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < val.size(); ++i)
      if (val[i] < val[worst]) worst = i;
    if (value > val[worst]) {
      val[worst] = value;
      u[worst] = uu;
      v[worst] = vv;
    }
  }
};

}  // namespace detail

// L^p norm against the invariant measure, truncated to cfg.rect:
//   ( integral |f|^p dx dy / y^2 )^{1/p},   p in [1, inf].
// Requires the support (or decay tail at cfg.tail_tol) of f to fit inside
// the rectangle, so truncation error is controlled by construction.
// p = inf returns a refined grid maximum of |f|.
inline double lp_norm(const Field& f, const LpConfig& cfg) {
  if (!(cfg.p >= 1.0)) throw std::invalid_argument("lp_norm: requires p >= 1");
  const RectDomain srect = support_rect(f, std::isinf(cfg.p) ? 1.0 : cfg.p, cfg.tail_tol);
  if (!cfg.rect.contains(srect))
    throw std::invalid_argument("lp_norm: field support exceeds the truncation rectangle");

  if (std::isinf(cfg.p)) {
    const Grid1d gx = uniform_grid(cfg.rect.x_lo, cfg.rect.x_hi, cfg.nx, Rule::midpoint);
    const Grid1d gt = uniform_grid(std::log(cfg.rect.y_lo), std::log(cfg.rect.y_hi),
                                   cfg.ny, Rule::midpoint);
    detail::TopCells top;
    for (std::size_t j = 0; j < gt.size(); ++j)
      for (std::size_t i = 0; i < gx.size(); ++i) {
        const double v = std::fabs(f.eval(UhpPoint(gx.node[i], std::exp(gt.node[j]))));
        top.offer(v, gx.node[i], gt.node[j]);
      }
    const double hx = (cfg.rect.x_hi - cfg.rect.x_lo) / cfg.nx;
    const double ht = (std::log(cfg.rect.y_hi) - std::log(cfg.rect.y_lo)) / cfg.ny;
    double best = 0.0;
    for (std::size_t k = 0; k < top.val.size(); ++k)
      best = std::max(best, detail::refine_max(
                                [&](double x, double t) {
                                  return std::fabs(f.eval(UhpPoint(x, std::exp(t))));
                                },
                                top.u[k], top.v[k], hx, ht));
    return best;
  }

  const Grid1d gx = uniform_grid(cfg.rect.x_lo, cfg.rect.x_hi, cfg.nx, cfg.rule);
  const Grid1d gy = log_grid(cfg.rect.y_lo, cfg.rect.y_hi, cfg.ny, cfg.rule);
  double total = 0.0;
  for (std::size_t j = 0; j < gy.size(); ++j) {
    const double y = gy.node[j];
    const double wy = gy.weight[j] / (y * y);
    double row = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
      row += gx.weight[i] * std::pow(std::fabs(f.eval(UhpPoint(gx.node[i], y))), cfg.p);
    total += wy * row;
  }
  return std::pow(total, 1.0 / cfg.p);
}

// Geodesic polar coordinates about i: the point at distance r from i in the
// direction phi. rotate_about_i(t, .) advances phi by exactly 2t, which is
// what makes rotation images cheap on these grids.
inline UhpPoint polar_point(double r, double phi) {
  if (r < 0.0) {
    r = -r;
    phi += std::numbers::pi;
  }
  return rotate_about_i(0.5 * phi, UhpPoint(0.0, std::exp(r)));
}

struct OrbitQuadConfig {
  double r_max = 4.0;
  int nr = 160;
  int nphi = 384;
  Rule radial_rule = Rule::simpson;
};

// Tensor grid in (r, phi) with the area element sinh(r) dr dphi folded into
// per-point measures. Row-major, r outermost.
struct OrbitGrid {
  Grid1d gr;
  Grid1d gphi;
  std::vector<UhpPoint> point;
  std::vector<double> meas;
  double r_max = 0.0;

  std::size_t index(std::size_t ir, std::size_t ip) const { return ir * gphi.size() + ip; }
};

inline OrbitGrid make_orbit_grid(const OrbitQuadConfig& cfg) {
  if (!(cfg.r_max > 0.0)) throw std::invalid_argument("make_orbit_grid: requires r_max > 0");
  OrbitGrid g;
  g.r_max = cfg.r_max;
  g.gr = uniform_grid(0.0, cfg.r_max, cfg.nr, cfg.radial_rule);
  g.gphi = periodic_grid(cfg.nphi);
  g.point.reserve(g.gr.size() * g.gphi.size());
  g.meas.reserve(g.gr.size() * g.gphi.size());
  for (std::size_t ir = 0; ir < g.gr.size(); ++ir) {
    const double r = g.gr.node[ir];
    const double wr = g.gr.weight[ir] * std::sinh(r);
    const UhpPoint base(0.0, std::exp(r));
    for (std::size_t ip = 0; ip < g.gphi.size(); ++ip) {
      g.point.push_back(rotate_about_i(0.5 * g.gphi.node[ip], base));
      g.meas.push_back(wr * g.gphi.weight[ip]);
    }
  }
  return g;
}

namespace detail {

inline double power_abs(double v, double p) {
  v = std::fabs(v);
  if (p == 1.0) return v;
  if (p == 2.0) return v * v;
  if (p == 4.0) {
    const double s = v * v;
    return s * s;
  }
  return std::pow(v, p);
}

inline double norm_from_values(const std::vector<double>& vals, const OrbitGrid& g, double p) {
  double total = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) total += g.meas[k] * power_abs(vals[k], p);
  return std::pow(total, 1.0 / p);
}

// sup norm from cached grid values plus local refinement with the exact
// evaluator (values alone would under-estimate by the sampling offset).
// iters = 14 already shrinks the stencil by 2^-14, putting the remaining
// value error at |f''| (h 2^-14)^2 — orders below kLpQuadTolerance — so
// callers with an expensive evaluator cap it there.
template <class F>
double sup_from_values(const std::vector<double>& vals, const OrbitGrid& g, F&& feval,
                       int iters = 34) {
  TopCells top;
  for (std::size_t ir = 0; ir < g.gr.size(); ++ir)
    for (std::size_t ip = 0; ip < g.gphi.size(); ++ip)
      top.offer(std::fabs(vals[g.index(ir, ip)]), g.gr.node[ir], g.gphi.node[ip]);
  const double hr = g.gr.size() > 1 ? g.gr.node[1] - g.gr.node[0] : g.r_max;
  const double hp = g.gphi.weight[0];
  double best = 0.0;
  for (std::size_t k = 0; k < top.val.size(); ++k) {
    best = std::max(best, refine_max(
                              [&](double r, double phi) {
                                r = std::clamp(r, 0.0, g.r_max);
                                return std::fabs(feval(polar_point(r, phi)));
                              },
                              top.u[k], top.v[k], hr, hp, iters));
  }
  return best;
}

}  // namespace detail

// L^p norm computed in geodesic polar coordinates about i, truncated at
// r_max. This is the norm engine used for operator images: rotating a
// function only shifts phi, so the quadrature resolves f and its rotates
// with identical error instead of meeting rotated supports with an
// axis-aligned grid.
template <class F>
double lp_norm_about_i(F&& f, double p, const OrbitQuadConfig& cfg) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_about_i: requires p >= 1");
  const OrbitGrid g = make_orbit_grid(cfg);
  std::vector<double> vals(g.point.size());
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = f(g.point[k]);
  if (std::isinf(p)) return detail::sup_from_values(vals, g, f);
  return detail::norm_from_values(vals, g, p);
}

struct LpBoundReport {
  double p = 2.0;
  double f_norm = 0.0;
  double hf_norm = 0.0;
  double kernel_l1 = 0.0;
  double bound = 0.0;  // (1 + kLpQuadTolerance) * kernel_l1 * f_norm
  double ratio = 0.0;  // hf_norm / (kernel_l1 * f_norm)
  bool pass = false;
};

struct LpBoundCase {
  int kernel = 0;
  int field = 0;
  double p = 2.0;
  LpBoundReport report;
};

namespace detail {

// H f sampled over an orbit grid. For the density part the kernel is
// resampled to nphi midpoint nodes: with that node count, the rotation by
// theta_j advances the phi index by exactly 2j + 1, so each radial ring of
// H f is a circular convolution of the cached f ring with the density
// weights and costs no extra evaluations of f. The angular quadrature is
// spectrally accurate in nphi for smooth densities, so the resampling
// changes nothing beyond rounding at the tolerances used here. Point masses
// fall at unaligned angles and are evaluated directly.
template <class F>
std::vector<double> hausdorff_values_on_grid(const KernelMeasure& km, F&& f,
                                             const OrbitGrid& g,
                                             const std::vector<double>& fvals) {
  const std::size_t nphi = g.gphi.size();
  const std::size_t nr = g.gr.size();
  std::vector<double> out(fvals.size(), 0.0);

  if (km.has_density()) {
    const double h = 2.0 * std::numbers::pi / static_cast<double>(nphi);
    std::vector<double> wdens(nphi);
    for (std::size_t j = 0; j < nphi; ++j) wdens[j] = h * km.density((j + 0.5) * h);
    for (std::size_t ir = 0; ir < nr; ++ir) {
      const double* ring = fvals.data() + ir * nphi;
      double* dst = out.data() + ir * nphi;
      for (std::size_t i = 0; i < nphi; ++i) {
        double acc = 0.0;
        std::size_t idx = (i + 1) % nphi;  // offset of theta_0: 2*0 + 1
        for (std::size_t j = 0; j < nphi; ++j) {
          acc += wdens[j] * ring[idx];
          idx += 2;
          if (idx >= nphi) idx -= nphi;
        }
        dst[i] = acc;
      }
    }
  }

  for (const KernelAtom& a : km.atoms()) {
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += a.weight * f(rotate_about_i(a.theta, g.point[k]));
  }
  return out;
}

}  // namespace detail

// Truncation radius that certifies both ||f||_p and ||H f||_p on one grid:
// rotations about i preserve distance to i, so H f lives inside the ball of
// radius dist(center, i) + support radius around i, and that ball also
// contains the support of f.
inline OrbitQuadConfig orbit_config_for(const Field& f, double p,
                                        const OrbitQuadConfig& base = {}) {
  OrbitQuadConfig cfg = base;
  const double pr = std::isinf(p) ? 1.0 : p;
  cfg.r_max = hyp_distance(support_center(f), uhp_i()) + support_radius(f, pr) + 0.25;
  return cfg;
}

// Checks ||H f||_p <= (1 + kLpQuadTolerance) * ||kernel||_TV * ||f||_p for
// every kernel/field/exponent combination. Grids and cached samples are
// shared per field across kernels and exponents. Cases are returned
// kernel-major, then field, then exponent, matching the CLI output order.
inline std::vector<LpBoundCase> verify_lp_bound_matrix(
    const std::vector<KernelMeasure>& kernels, const std::vector<Field>& fields,
    const std::vector<double>& exponents, const OrbitQuadConfig& base = {}) {
  for (double p : exponents)
    if (!(p >= 1.0)) throw std::invalid_argument("verify_lp_bound_matrix: requires p >= 1");

  std::vector<double> l1(kernels.size());
  for (std::size_t k = 0; k < kernels.size(); ++k) l1[k] = kernel_l1_norm(kernels[k]);

  std::vector<LpBoundCase> cases(kernels.size() * fields.size() * exponents.size());
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const Field& f = fields[fi];
    const OrbitQuadConfig cfg = orbit_config_for(f, 1.0, base);
    const OrbitGrid grid = make_orbit_grid(cfg);
    std::vector<double> fvals(grid.point.size());
    for (std::size_t k = 0; k < fvals.size(); ++k) fvals[k] = f.eval(grid.point[k]);

    std::vector<double> f_norm(exponents.size());
    for (std::size_t pi = 0; pi < exponents.size(); ++pi)
      f_norm[pi] = std::isinf(exponents[pi])
                       ? detail::sup_from_values(fvals, grid, f.eval)
                       : detail::norm_from_values(fvals, grid, exponents[pi]);

    for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
      const std::vector<double> hvals =
          detail::hausdorff_values_on_grid(kernels[ki], f.eval, grid, fvals);
      const KernelMeasure resampled = kernels[ki].has_density()
                                          ? kernels[ki].with_nodes(cfg.nphi)
                                          : kernels[ki];
      for (std::size_t pi = 0; pi < exponents.size(); ++pi) {
        const double p = exponents[pi];
        double hf_norm;
        if (std::isinf(p)) {
          hf_norm = detail::sup_from_values(
              hvals, grid,
              [&](const UhpPoint& z) { return hausdorff_apply(resampled, f.eval, z); }, 14);
        } else {
          hf_norm = detail::norm_from_values(hvals, grid, p);
        }
        LpBoundReport rep;
        rep.p = p;
        rep.f_norm = f_norm[pi];
        rep.hf_norm = hf_norm;
        rep.kernel_l1 = l1[ki];
        rep.bound = (1.0 + kLpQuadTolerance) * rep.kernel_l1 * rep.f_norm;
        const double denom = rep.kernel_l1 * rep.f_norm;
        rep.ratio = denom > 0.0 ? hf_norm / denom : (hf_norm == 0.0 ? 0.0 : kLpInfinity);
        rep.pass = hf_norm <= rep.bound;
        LpBoundCase& c =
            cases[(ki * fields.size() + fi) * exponents.size() + pi];
        c.kernel = static_cast<int>(ki);
        c.field = static_cast<int>(fi);
        c.p = p;
        c.report = rep;
      }
    }
  }
  return cases;
}

inline LpBoundReport verify_lp_bound(const KernelMeasure& km, const Field& f, double p,
                                     const OrbitQuadConfig& base = {}) {
  return verify_lp_bound_matrix({km}, {f}, {p}, base)[0].report;
}

// max over the family of ||H f||_p / ||f||_p: a certified lower bound for
// the operator norm up to quadrature error. Rejects empty families and
// members with vanishing norm, for which the ratio is meaningless.
inline double operator_norm_lower_bound(const KernelMeasure& km, double p,
                                        const std::vector<Field>& family,
                                        const OrbitQuadConfig& base = {}) {
  if (family.empty())
    throw std::invalid_argument("operator_norm_lower_bound: empty family");
  if (!(p >= 1.0)) throw std::invalid_argument("operator_norm_lower_bound: requires p >= 1");
  double best = 0.0;
  for (const Field& f : family) {
    const OrbitQuadConfig cfg = orbit_config_for(f, 1.0, base);
    const OrbitGrid grid = make_orbit_grid(cfg);
    std::vector<double> fvals(grid.point.size());
    for (std::size_t k = 0; k < fvals.size(); ++k) fvals[k] = f.eval(grid.point[k]);
    const double fn = std::isinf(p) ? detail::sup_from_values(fvals, grid, f.eval)
                                    : detail::norm_from_values(fvals, grid, p);
    if (!(fn > 1e-300))
      throw std::domain_error("operator_norm_lower_bound: family member has zero norm");
    const std::vector<double> hvals =
        detail::hausdorff_values_on_grid(km, f.eval, grid, fvals);
    const KernelMeasure resampled =
        km.has_density() ? km.with_nodes(cfg.nphi) : km;
    const double hn =
        std::isinf(p)
            ? detail::sup_from_values(
                  hvals, grid,
                  [&](const UhpPoint& z) { return hausdorff_apply(resampled, f.eval, z); }, 14)
            : detail::norm_from_values(hvals, grid, p);
    best = std::max(best, hn / fn);
  }
  return best;
}

}  // namespace halo
