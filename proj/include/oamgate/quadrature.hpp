#pragma once

#include <vector>

namespace oamgate::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1].  Results are cached per order;
// safe to call from multiple threads.
const Rule& gauss_legendre(int n);

// The same rule mapped onto [a, b].
Rule gauss_legendre_on(int n, double a, double b);

}  // namespace oamgate::quad
