#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "halo/geometry.hpp"

namespace halo {

// Real 2x2 matrix, row-major [[a, b], [c, d]].
struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  Mat2() = default;
  Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)))
      throw std::invalid_argument("Mat2: entries must be finite");
  }

  double det() const { return a * d - b * c; }
  Mat2 transpose() const { return Mat2(a, c, b, d); }
  Mat2 inverse() const {
    const double dt = det();
    if (dt == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
    return Mat2(d / dt, -b / dt, -c / dt, a / dt);
  }
  static Mat2 identity() { return Mat2(); }
};

inline Mat2 operator*(const Mat2& l, const Mat2& r) {
  return Mat2(l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
              l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d);
}

inline double max_abs_diff(const Mat2& l, const Mat2& r) {
  return std::max(std::max(std::fabs(l.a - r.a), std::fabs(l.b - r.b)),
                  std::max(std::fabs(l.c - r.c), std::fabs(l.d - r.d)));
}

// Element of SL(2, R). Construction enforces |det - 1| <= kDetTol and never
// renormalizes: a caller that accumulated too much rounding error must
// decide for itself how to reproject, silently fixing it up here would mask
// the drift that tests need to see.
class SL2Element {
 public:
  static constexpr double kDetTol = 1e-12;

  SL2Element() = default;
  explicit SL2Element(const Mat2& m) : m_(m) {
    if (std::fabs(m.det() - 1.0) > kDetTol)
      throw std::invalid_argument("SL2Element: determinant must equal 1 within 1e-12");
  }

  const Mat2& mat() const { return m_; }

  SL2Element inverse() const { return SL2Element(Mat2(m_.d, -m_.b, -m_.c, m_.a)); }

  friend SL2Element operator*(const SL2Element& l, const SL2Element& r) {
    return SL2Element(l.m_ * r.m_);
  }

 private:
  Mat2 m_{};
};

// rotation(theta) = [[cos, -sin], [sin, cos]]: the stabilizer of i.
inline SL2Element rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return SL2Element(Mat2(c, -s, s, c));
}

// reflection(theta) = [[cos, sin], [sin, -cos]]: determinant -1, equals its
// own inverse. Together with the rotations these exhaust O(2).
inline Mat2 reflection(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Mat2(c, s, s, -c);
}

// Upper-triangular element moving i to z = x + iy:
// (1/sqrt(y)) [[y, x], [0, 1]].
inline SL2Element translate_i_to(const UhpPoint& z) {
  const double s = std::sqrt(z.im);
  return SL2Element(Mat2(s, z.re / s, 0.0, 1.0 / s));
}

// Moebius action z -> (az + b) / (cz + d) of a matrix with positive
// determinant; preserves the upper half-plane. The imaginary part is
// computed directly as det * Im z / |cz + d|^2 so the result stays in the
// half-plane by construction.
inline UhpPoint mobius_apply(const Mat2& g, const UhpPoint& z) {
  const double dt = g.det();
  if (!(dt > 0.0))
    throw std::domain_error("mobius_apply: requires positive determinant");
  const std::complex<double> zz = z.cplx();
  const std::complex<double> num = g.a * zz + g.b;
  const std::complex<double> den = g.c * zz + g.d;
  const double d2 = std::norm(den);
  return UhpPoint(std::real(num * std::conj(den)) / d2, dt * z.im / d2);
}

// Rotation of the half-plane about i:
//   r_theta(z) = (z cos(theta) + sin(theta)) / (-z sin(theta) + cos(theta)),
// i.e. the action of rotation(-theta). In disk coordinates centered at i
// this is the Euclidean rotation by 2*theta, so theta has period pi.
inline UhpPoint rotate_about_i(double theta, const UhpPoint& z) {
  const double c = std::cos(theta), s = std::sin(theta);
  const std::complex<double> zz = z.cplx();
  const std::complex<double> num = zz * c + s;
  const std::complex<double> den = -zz * s + c;
  const double d2 = std::norm(den);
  return UhpPoint(std::real(num * std::conj(den)) / d2, z.im / d2);
}

inline bool is_orthogonal(const Mat2& u, double tol = 1e-12) {
  return max_abs_diff(u.transpose() * u, Mat2::identity()) <= tol;
}

// Point reached by conjugating the canonical representative of z with an
// orthogonal u:  z -> (u^{-1} x(z) u) . i  where x(z) = translate_i_to(z).
// For u = rotation(theta) this is rotate_about_i(theta, z); for a
// reflection it is the mirror image of that rotation (see tests).
inline UhpPoint conjugate_action(const Mat2& u, const UhpPoint& z) {
  if (!is_orthogonal(u))
    throw std::invalid_argument("conjugate_action: u must be orthogonal");
  // u^{-1} = u^T for orthogonal u
  const Mat2 m = u.transpose() * translate_i_to(z).mat() * u;
  return mobius_apply(m, uhp_i());
}

inline Mat2 unipotent(double x) { return Mat2(1.0, x, 0.0, 1.0); }

inline Mat2 diag_a(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("diag_a: requires y > 0");
  const double s = std::sqrt(y);
  return Mat2(s, 0.0, 0.0, 1.0 / s);
}

// g = n(x) a(y) k(theta) with x = Re(g.i), y = Im(g.i), theta in [0, 2*pi).
struct IwasawaCoords {
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;
};

inline IwasawaCoords iwasawa_decompose(const SL2Element& g) {
  const UhpPoint z = mobius_apply(g.mat(), uhp_i());
  const double rs = std::sqrt(z.im);
  const Mat2& m = g.mat();
  // k = a(y)^{-1} n(x)^{-1} g; only the first column is needed for theta.
  const double k11 = (m.a - z.re * m.c) / rs;
  const double k21 = rs * m.c;
  double theta = std::atan2(k21, k11);
  if (theta < 0.0) theta += 2.0 * std::numbers::pi;
  if (theta >= 2.0 * std::numbers::pi) theta = 0.0;
  return {z.re, z.im, theta};
}

inline SL2Element iwasawa_compose(const IwasawaCoords& c) {
  return translate_i_to(UhpPoint(c.x, c.y)) * rotation(c.theta);
}

}  // namespace halo
