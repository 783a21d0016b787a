// Averages an off-center bump over all rotations about i and prints its
// values around a ring: the input varies with the angle, the average does
// not. Also shows the average acting as the identity on a radial profile.

#include <cstdio>
#include <numbers>

#include "halo/halo.hpp"

int main() {
  using namespace halo;
  const KernelMeasure mu = KernelMeasure::uniform(1.0);
  const Field skew = product_bump(0.6, 0.2, 1.0, 0.8, 1.0);

  std::printf("values on the ring at distance 1 from i (phi in degrees):\n");
  std::printf("%8s %14s %14s\n", "phi", "f", "avg f");
  for (int k = 0; k < 8; ++k) {
    const double phi = k * (2.0 * std::numbers::pi / 8.0);
    const UhpPoint z = polar_point(1.0, phi);
    std::printf("%8.1f %14.6e %14.6e\n", 45.0 * k, skew.eval(z),
                cesaro_apply(mu, skew, z));
  }

  const Field radial = radial_bump(uhp_i(), 1.4, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const UhpPoint z = polar_point(0.025 * k, 0.37 * k);
    const double gap = std::fabs(cesaro_apply(mu, radial, z) - radial.eval(z));
    if (gap > worst) worst = gap;
  }
  std::printf("\nradial profile reproduced up to %.2e over 64 probe points\n", worst);
  return 0;
}
