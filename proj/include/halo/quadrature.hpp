#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace halo {

// Composite quadrature rules on an interval. midpoint is the default
// everywhere (open rule, never touches interval endpoints, O(h^2));
// simpson is available where 1e-6-level relative accuracy is needed on
// smooth integrands without inflating node counts.
enum class Rule { midpoint, simpson };

struct Grid1d {
  std::vector<double> node;
  std::vector<double> weight;
  std::size_t size() const { return node.size(); }
};

inline Grid1d uniform_grid(double lo, double hi, int n, Rule rule) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo))
    throw std::invalid_argument("uniform_grid: requires finite lo < hi");
  if (n < 1) throw std::invalid_argument("uniform_grid: requires n >= 1");
  Grid1d g;
  if (rule == Rule::midpoint) {
    const double h = (hi - lo) / n;
    g.node.resize(n);
    g.weight.assign(n, h);
    for (int i = 0; i < n; ++i) g.node[i] = lo + (i + 0.5) * h;
  } else {
    const int panels = (n % 2 == 0) ? n : n + 1;  // composite Simpson needs an even panel count
    const int m = panels + 1;
    const double h = (hi - lo) / panels;
    g.node.resize(m);
    g.weight.resize(m);
    for (int i = 0; i < m; ++i) {
      g.node[i] = lo + i * h;
      g.weight[i] = (i == 0 || i == panels) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    }
  }
  return g;
}

// Midpoint nodes on [0, 2*pi). For smooth periodic integrands the uniform
// midpoint rule converges spectrally, so no higher-order variant is needed
// in the angular direction.
inline Grid1d periodic_grid(int n) {
  if (n < 1) throw std::invalid_argument("periodic_grid: requires n >= 1");
  Grid1d g;
  const double h = 2.0 * std::numbers::pi / n;
  g.node.resize(n);
  g.weight.assign(n, h);
  for (int i = 0; i < n; ++i) g.node[i] = (i + 0.5) * h;
  return g;
}

// Nodes in y placed uniformly in t = log y. Weights are for integration
// against dy (the Jacobian e^t is folded in), so a caller integrating
// f(y) dy / y^2 just divides samples by y^2.
inline Grid1d log_grid(double lo, double hi, int n, Rule rule) {
  if (!(lo > 0.0)) throw std::invalid_argument("log_grid: requires lo > 0");
  Grid1d g = uniform_grid(std::log(lo), std::log(hi), n, rule);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node[i] = std::exp(g.node[i]);
    g.weight[i] *= g.node[i];
  }
  return g;
}

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

}  // namespace halo
