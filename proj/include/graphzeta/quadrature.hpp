#pragma once

#include <functional>
#include <vector>

namespace gz {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes (Newton iteration on P_n).
const QuadratureRule& gauss_legendre(int n);

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels.
template <class Value>
Value integrate(const std::function<Value(double)>& f, double a, double b, int panels, int order) {
  const QuadratureRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  Value sum{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      sum += (0.5 * h * rule.weights[i]) * f(mid + 0.5 * h * rule.nodes[i]);
  }
  return sum;
}

}  // namespace gz
