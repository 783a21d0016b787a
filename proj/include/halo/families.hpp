#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "halo/atoms.hpp"
#include "halo/field.hpp"
#include "halo/kernel.hpp"
#include "halo/rng.hpp"

namespace halo {

// Seeded families used by both the CLI and the verification suite. Every
// draw goes through SplitMix64 only, so a (seed, count) pair names the same
// family on every platform.

// Kernel kinds cycle: uniform density, degree-3 trigonometric density
// (sign-changing), pure point masses, density plus point masses.
inline std::vector<KernelMeasure> random_kernel_family(std::uint64_t seed, int count,
                                                       int density_nodes = 512) {
  SplitMix64 rng(seed);
  std::vector<KernelMeasure> out;
  out.reserve(count);
  const double two_pi = 2.0 * std::numbers::pi;
  auto trig_density = [&rng]() {
    const double a0 = rng.uniform(0.2, 1.0);
    const double a1 = rng.uniform(-0.8, 0.8);
    const double b1 = rng.uniform(-0.8, 0.8);
    const double a2 = rng.uniform(-0.5, 0.5);
    const double b3 = rng.uniform(-0.4, 0.4);
    return [=](double t) {
      return a0 + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2.0 * t) +
             b3 * std::sin(3.0 * t);
    };
  };
  auto add_atoms = [&rng, two_pi](KernelMeasure& km, int n) {
    for (int a = 0; a < n; ++a) {
      const double theta = rng.uniform(0.0, two_pi);
      const double mag = rng.uniform(0.15, 1.0);
      km.add_atom(theta, rng.uniform() < 0.5 ? -mag : mag);
    }
  };
  for (int i = 0; i < count; ++i) {
    switch (i % 4) {
      case 0:
        out.push_back(KernelMeasure::uniform(rng.uniform(0.25, 2.0), density_nodes));
        break;
      case 1:
        out.push_back(KernelMeasure::custom(trig_density(), density_nodes));
        break;
      case 2: {
        KernelMeasure km;
        add_atoms(km, 1 + static_cast<int>(rng.below(4)));
        out.push_back(km);
        break;
      }
      default: {
        KernelMeasure km = KernelMeasure::uniform(rng.uniform(0.2, 0.9), density_nodes);
        add_atoms(km, 1 + static_cast<int>(rng.below(2)));
        out.push_back(km);
        break;
      }
    }
  }
  return out;
}

// Compactly supported test functions: three product bumps per radial bump,
// centers kept within distance ~1.5 of i so norm truncation radii stay
// moderate.
inline std::vector<Field> random_bump_family(std::uint64_t seed, int count) {
  SplitMix64 rng(seed);
  std::vector<Field> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double x0 = rng.uniform(-1.2, 1.2);
    const double t0 = rng.uniform(-0.9, 0.9);
    const double amp = rng.uniform(0.5, 2.0);
    if (i % 4 == 3) {
      out.push_back(radial_bump(UhpPoint(x0, std::exp(t0)), rng.uniform(0.6, 1.8), amp));
    } else {
      out.push_back(product_bump(x0, t0, rng.uniform(0.5, 1.8), rng.uniform(0.4, 1.1), amp));
    }
  }
  return out;
}

// Valid two-layer atoms with centers near i and radii at most b.
inline std::vector<Atom> random_atom_family(std::uint64_t seed, int count, double b) {
  SplitMix64 rng(seed);
  std::vector<Atom> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const UhpPoint center(rng.uniform(-1.0, 1.0), rng.log_uniform(0.5, 2.0));
    const double r = rng.uniform(0.2, b);
    const double r_in = r * rng.uniform(0.15, 0.85);
    out.push_back(make_radial_atom(center, r, r_in));
  }
  return out;
}

// Purely atomic kernels (1 to 4 point masses each).
inline std::vector<KernelMeasure> random_atomic_kernel_family(std::uint64_t seed, int count) {
  SplitMix64 rng(seed);
  std::vector<KernelMeasure> out;
  out.reserve(count);
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < count; ++i) {
    KernelMeasure km;
    const int n = 1 + static_cast<int>(rng.below(4));
    for (int a = 0; a < n; ++a) {
      const double mag = rng.uniform(0.1, 1.2);
      km.add_atom(rng.uniform(0.0, two_pi), rng.uniform() < 0.5 ? -mag : mag);
    }
    out.push_back(km);
  }
  return out;
}

}  // namespace halo
