// Prints ||H f||_p / (||kernel||_TV ||f||_p) for a few kernels and fields:
// the ratio never exceeds 1 beyond quadrature error, and equals 1 when the
// kernel is a single rotation.

#include <cstdio>
#include <vector>

#include "halo/halo.hpp"

int main() {
  using namespace halo;

  std::vector<KernelMeasure> kernels;
  kernels.push_back(KernelMeasure::uniform(1.0));
  // sign-changing density; the even harmonic survives the half-turn
  // periodicity of the rotation action (a pure cos(t + c) kernel would
  // annihilate every field)
  kernels.push_back(
      KernelMeasure::custom([](double t) { return 0.5 + 0.7 * std::cos(2.0 * t + 0.4); }, 2048));
  KernelMeasure single;
  single.add_atom(1.1, 1.0);
  kernels.push_back(single);
  const char* kernel_names[] = {"uniform mass 1", "trig mix", "single rotation"};

  const std::vector<Field> fields = {radial_bump(uhp_i(), 1.2, 1.0),
                                     product_bump(0.4, -0.2, 1.1, 0.7, 1.3)};
  const char* field_names[] = {"radial bump", "skew bump"};

  std::printf("%-16s %-12s %6s %12s %12s %10s\n", "kernel", "field", "p", "|Hf|_p",
              "|k|_TV |f|_p", "ratio");
  for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
      for (double p : {1.0, 2.0, kLpInfinity}) {
        const LpBoundReport rep = verify_lp_bound(kernels[ki], fields[fi], p);
        std::printf("%-16s %-12s %6.3g %12.6f %12.6f %10.6f\n", kernel_names[ki],
                    field_names[fi], p, rep.hf_norm, rep.kernel_l1 * rep.f_norm,
                    rep.ratio);
      }
    }
  }
  return 0;
}
