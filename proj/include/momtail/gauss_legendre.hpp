#pragma once

#include <vector>

namespace momtail {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1]; nodes by Newton on P_n.
GaussRule gauss_legendre(int n);

/// Cached 16-point rule.
const GaussRule& gauss_legendre_16();

}  // namespace momtail
