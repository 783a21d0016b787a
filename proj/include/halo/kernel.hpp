#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace halo {

// One point mass of an angular measure: weight * delta at theta.
struct KernelAtom {
  double theta = 0.0;
  double weight = 0.0;
};

// How the density part of a kernel was specified. Kept alongside the
// evaluator so kernels can be serialized: a custom callable is represented
// by its samples at the quadrature nodes (kind = table) when written out.
struct DensitySpec {
  enum class Kind { none, uniform, cosine, table, custom };
  Kind kind = Kind::none;
  double mass = 0.0;       // uniform: total mass of the density part
  double amplitude = 0.0;  // cosine
  double phase = 0.0;      // cosine
  std::vector<double> values;  // table: samples at theta_j = (j + 1/2) 2 pi / size
};

// Finite signed measure on the circle [0, 2 pi): an absolutely continuous
// part, given by a density evaluated with `nodes` midpoint quadrature
// points, plus finitely many point masses. Either part may be empty.
class KernelMeasure {
 public:
  static constexpr int kDefaultNodes = 4096;

  KernelMeasure() = default;

  static KernelMeasure zero() { return KernelMeasure(); }

  // density == mass / (2 pi), total density mass == mass.
  static KernelMeasure uniform(double mass, int nodes = kDefaultNodes) {
    check_finite(mass, "uniform mass");
    KernelMeasure km;
    km.spec_.kind = DensitySpec::Kind::uniform;
    km.spec_.mass = mass;
    const double value = mass / (2.0 * std::numbers::pi);
    km.density_ = [value](double) { return value; };
    km.set_nodes(nodes);
    return km;
  }

  // density(theta) = amplitude * cos(theta + phase); changes sign.
  static KernelMeasure cosine(double amplitude, double phase = 0.0, int nodes = kDefaultNodes) {
    check_finite(amplitude, "cosine amplitude");
    check_finite(phase, "cosine phase");
    KernelMeasure km;
    km.spec_.kind = DensitySpec::Kind::cosine;
    km.spec_.amplitude = amplitude;
    km.spec_.phase = phase;
    km.density_ = [amplitude, phase](double t) { return amplitude * std::cos(t + phase); };
    km.set_nodes(nodes);
    return km;
  }

  // density by periodic linear interpolation of samples taken at the
  // midpoints theta_j = (j + 1/2) 2 pi / values.size().
  static KernelMeasure table(std::vector<double> values, int nodes = kDefaultNodes) {
    if (values.empty()) throw std::invalid_argument("KernelMeasure::table: empty table");
    for (double v : values) check_finite(v, "table value");
    KernelMeasure km;
    km.spec_.kind = DensitySpec::Kind::table;
    km.spec_.values = std::move(values);
    // captured by value: the evaluator must survive copies and moves of km
    std::vector<double> tab = km.spec_.values;
    km.density_ = [tab = std::move(tab)](double t) { return interp_periodic(tab, t); };
    km.set_nodes(nodes);
    return km;
  }

  static KernelMeasure custom(std::function<double(double)> density, int nodes = kDefaultNodes) {
    if (!density) throw std::invalid_argument("KernelMeasure::custom: empty callable");
    KernelMeasure km;
    km.spec_.kind = DensitySpec::Kind::custom;
    km.density_ = std::move(density);
    km.set_nodes(nodes);
    return km;
  }

  static KernelMeasure point_masses(std::vector<KernelAtom> atoms) {
    KernelMeasure km;
    for (const KernelAtom& a : atoms) km.add_atom(a.theta, a.weight);
    return km;
  }

  // Adds one point mass; merges with an existing atom at the same angle.
  KernelMeasure& add_atom(double theta, double weight) {
    if (!(std::isfinite(theta) && theta >= 0.0 && theta < 2.0 * std::numbers::pi))
      throw std::invalid_argument("KernelMeasure: atom angle must lie in [0, 2 pi)");
    check_finite(weight, "atom weight");
    for (KernelAtom& a : atoms_) {
      if (a.theta == theta) {
        a.weight += weight;
        return *this;
      }
    }
    atoms_.push_back({theta, weight});
    std::sort(atoms_.begin(), atoms_.end(),
              [](const KernelAtom& l, const KernelAtom& r) { return l.theta < r.theta; });
    return *this;
  }

  // Measure sum: densities add pointwise, atom lists merge (equal angles
  // combine their weights).
  KernelMeasure merged(const KernelMeasure& other) const {
    KernelMeasure km;
    if (density_ && other.density_) {
      auto f = density_, g = other.density_;
      km.density_ = [f, g](double t) { return f(t) + g(t); };
      km.spec_.kind = DensitySpec::Kind::custom;
      km.set_nodes(std::max(nodes_, other.nodes_));
    } else if (density_ || other.density_) {
      const KernelMeasure& src = density_ ? *this : other;
      km.density_ = src.density_;
      km.spec_ = src.spec_;
      km.set_nodes(src.nodes_);
    }
    for (const KernelAtom& a : atoms_) km.add_atom(a.theta, a.weight);
    for (const KernelAtom& a : other.atoms_) km.add_atom(a.theta, a.weight);
    return km;
  }

  bool has_density() const { return static_cast<bool>(density_); }
  double density(double theta) const { return density_(theta); }
  const std::vector<KernelAtom>& atoms() const { return atoms_; }
  int nodes() const { return nodes_; }
  const DensitySpec& spec() const { return spec_; }

  KernelMeasure with_nodes(int nodes) const {
    KernelMeasure km = *this;
    km.set_nodes(nodes);
    return km;
  }

 private:
  static void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("KernelMeasure: non-finite ") + what);
  }

  static double interp_periodic(const std::vector<double>& tab, double t) {
    const std::size_t m = tab.size();
    const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
    double u = t / step - 0.5;
    u -= std::floor(u / static_cast<double>(m)) * static_cast<double>(m);
    const std::size_t j0 = static_cast<std::size_t>(u) % m;
    const double frac = u - std::floor(u);
    const std::size_t j1 = (j0 + 1) % m;
    return tab[j0] + frac * (tab[j1] - tab[j0]);
  }

  void set_nodes(int nodes) {
    if (nodes < 1) throw std::invalid_argument("KernelMeasure: nodes must be >= 1");
    nodes_ = nodes;
  }

  std::function<double(double)> density_;  // null if purely atomic
  DensitySpec spec_;
  std::vector<KernelAtom> atoms_;
  int nodes_ = kDefaultNodes;
};

// Total variation norm: midpoint quadrature of |density| over [0, 2 pi)
// plus the absolute atom weights. Throws if the density produces a
// non-finite sample (the measure would not be finite).
inline double kernel_l1_norm(const KernelMeasure& km) {
  double total = 0.0;
  if (km.has_density()) {
    const int n = km.nodes();
    const double h = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
      const double v = km.density((j + 0.5) * h);
      if (!std::isfinite(v))
        throw std::domain_error("kernel_l1_norm: density sample is not finite");
      total += h * std::fabs(v);
    }
  }
  for (const KernelAtom& a : km.atoms()) total += std::fabs(a.weight);
  return total;
}

// Signed total mass (same quadrature, no absolute values).
inline double kernel_total_mass(const KernelMeasure& km) {
  double total = 0.0;
  if (km.has_density()) {
    const int n = km.nodes();
    const double h = 2.0 * std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
      const double v = km.density((j + 0.5) * h);
      if (!std::isfinite(v))
        throw std::domain_error("kernel_total_mass: density sample is not finite");
      total += h * v;
    }
  }
  for (const KernelAtom& a : km.atoms()) total += a.weight;
  return total;
}

}  // namespace halo
