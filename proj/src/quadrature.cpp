#include "oamgate/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace oamgate::quad {

namespace {

// Newton iteration on the Legendre three-term recurrence (nodes are
// symmetric, so only half are computed).
Rule build(int n) {
  Rule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));

  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (;;) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    rule.nodes[static_cast<size_t>(i - 1)] = -z;
    rule.nodes[static_cast<size_t>(n - i)] = z;
    rule.weights[static_cast<size_t>(i - 1)] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<size_t>(n - i)] = rule.weights[static_cast<size_t>(i - 1)];
  }
  return rule;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  if (n < 2) throw std::invalid_argument("gauss_legendre: need at least 2 points");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build(n)).first;
  return it->second;
}

Rule gauss_legendre_on(int n, double a, double b) {
  const Rule& base = gauss_legendre(n);
  Rule out;
  out.nodes.resize(base.nodes.size());
  out.weights.resize(base.weights.size());
  const double mid = 0.5 * (a + b);
  const double hal = 0.5 * (b - a);
  for (size_t i = 0; i < base.nodes.size(); ++i) {
    out.nodes[i] = mid + hal * base.nodes[i];
    out.weights[i] = hal * base.weights[i];
  }
  return out;
}

}  // namespace oamgate::quad
