#include "oamgate/lg_overlap.hpp"

#include "oamgate/errors.hpp"
#include "oamgate/quadrature.hpp"
#include "chi_oracle.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>
#include <vector>

using namespace oamgate;
using namespace oamgate::overlap;

namespace {

constexpr double kPi = std::numbers::pi;

// 2 pi * integral of |u_l(r, 0, z)|^2 r dr — the mode power.
double mode_power(int l, const BeamGeometry& geom, double z, int points) {
  const double w = geom.w0 * std::sqrt(1.0 + (z / geom.zR) * (z / geom.zR));
  const double rcut = 8.0 * w * std::sqrt(0.5 * std::abs(l) + 1.0);
  const auto rule = quad::gauss_legendre_on(points, 0.0, rcut);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    acc += rule.weights[i] * std::norm(lg_amplitude(l, 0, geom, r, 0.0, z)) * r;
  }
  return 2.0 * kPi * acc;
}

double chi_at(int l, int m, double zeta, const BeamGeometry& geom, const QuadratureSpec& quad) {
  return overlap_chi(l, m, zeta * geom.zR, geom, quad);
}

// coarse grid argmax refined by golden-section
double argmax_zeta(int l, int m, const BeamGeometry& geom, const QuadratureSpec& quad) {
  double best = 0.0, best_val = -1.0;
  for (int i = 0; i <= 30; ++i) {
    const double z = 3.0 * i / 30.0;
    const double v = chi_at(l, m, z, geom, quad);
    if (v > best_val) {
      best_val = v;
      best = z;
    }
  }
  double a = std::max(0.0, best - 0.1), b = std::min(3.0, best + 0.1);
  constexpr double kGolden = 0.6180339887498949;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = chi_at(l, m, c, geom, quad), fd = chi_at(l, m, d, geom, quad);
  for (int it = 0; it < 40; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = chi_at(l, m, c, geom, quad);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = chi_at(l, m, d, geom, quad);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("modes carry unit power at and away from the waist") {
  const BeamGeometry geom;
  for (int l : {0, 1, 2, 5}) {
    CHECK(std::abs(mode_power(l, geom, 0.0, 400) - 1.0) < 1e-8);
    CHECK(std::abs(mode_power(l, geom, 0.7 * geom.zR, 400) - 1.0) < 1e-8);
  }
}

TEST_CASE("fundamental mode is a real positive maximum on axis") {
  const BeamGeometry geom;
  const Complex u0 = lg_amplitude(0, 0, geom, 0.0, 0.3, 0.0);
  CHECK(u0.real() > 0.0);
  CHECK(u0.imag() == 0.0);
  CHECK(std::abs(lg_amplitude(0, 0, geom, 0.5, 0.0, 0.0)) < u0.real());
}

TEST_CASE("vortex modes vanish on axis") {
  const BeamGeometry geom;
  for (int l : {1, -1, 2, 3}) CHECK(std::abs(lg_amplitude(l, 0, geom, 0.0, 1.0, 0.0)) == 0.0);
}

TEST_CASE("amplitude equals a brute-force-normalized evaluation of the shape") {
  const BeamGeometry geom(1.0, 1.0);
  // unnormalized l=2 shape at the waist, normalized by high-resolution
  // quadrature of its own power
  auto shape = [&](double r) {
    const double x = std::numbers::sqrt2 * r / geom.w0;
    return x * x * std::exp(-r * r / (geom.w0 * geom.w0));
  };
  const auto rule = quad::gauss_legendre_on(2000, 0.0, 12.0);
  double power = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = rule.nodes[i];
    power += rule.weights[i] * shape(r) * shape(r) * r;
  }
  power *= 2.0 * kPi;
  const double r_probe = geom.w0;
  const Complex oracle = shape(r_probe) / std::sqrt(power) * std::polar(1.0, 2.0 * kPi / 4.0);
  const Complex got = lg_amplitude(2, 0, geom, r_probe, kPi / 4.0, 0.0);
  CHECK(std::abs(got - oracle) < 1e-8);
}

TEST_CASE("nonzero radial index is rejected") {
  CHECK_THROWS_AS(lg_amplitude(1, 1, BeamGeometry(), 0.5, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("geometry validation") {
  CHECK_THROWS_AS(BeamGeometry(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BeamGeometry(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("chi stays in range and is stable under refinement") {
  const BeamGeometry geom;
  const QuadratureSpec coarse;
  QuadratureSpec fine;
  fine.radial_points = 1024;
  for (auto [l, m, zeta] : std::vector<std::tuple<int, int, double>>{
           {5, -1, 1.0}, {4, -2, 0.8}, {0, -1, 0.3}, {8, 2, 2.5}}) {
    const double a = chi_at(l, m, zeta, geom, coarse);
    const double b = chi_at(l, m, zeta, geom, fine);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(std::abs(a - b) < 1e-8);
  }
}

TEST_CASE("azimuthal reduction agrees with the 2-D quadrature") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  const double reduced = chi_at(5, -1, 1.0, geom, quad);
  const double brute = testsup::chi_brute_2d(5, -1, 1.0 * geom.zR, geom);
  CHECK(std::abs(reduced - brute) < 1e-6);
}

TEST_CASE("chi is invariant under a rescaling of the beam units") {
  const QuadratureSpec quad;
  const BeamGeometry a(1.0, 1.0);
  const BeamGeometry b(0.37e-3, 2.9);
  const double zeta = 1.2;
  CHECK(std::abs(chi_at(5, -1, zeta, a, quad) - chi_at(5, -1, zeta, b, quad)) < 1e-9);
}

TEST_CASE("l=0 converts weaker than l=3 at l=3's optimal shift") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  const double z3 = argmax_zeta(3, -1, geom, quad);
  const double chi3 = chi_at(3, -1, z3, geom, quad);
  const double chi0 = chi_at(0, -1, z3, geom, quad);
  CHECK(chi0 < chi3);
}

TEST_CASE("zero drive OAM is rejected") {
  CHECK_THROWS_AS(overlap_chi(3, 0, 1.0, BeamGeometry(), QuadratureSpec()),
                  std::invalid_argument);
}

TEST_CASE("chi_sweep fills a deterministic table") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  const std::vector<int> ls{4, 5, 6};
  const std::vector<double> grid{0.0, 0.75, 1.5, 2.25, 3.0};
  const ChiTable t1 = chi_sweep(-1, ls, grid, geom, quad);
  const ChiTable t2 = chi_sweep(-1, ls, grid, geom, quad);
  CHECK(t1.values.rows() == 3);
  CHECK(t1.values.cols() == 5);
  CHECK((t1.values - t2.values).cwiseAbs().maxCoeff() == 0.0);
  for (size_t i = 0; i < ls.size(); ++i)
    for (size_t j = 0; j < grid.size(); ++j) {
      const double v = t1.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(t1.value(ls[i], grid[j]) == v);
      CHECK(std::abs(v - overlap_chi(ls[i], -1, grid[j] * geom.zR, geom, quad)) == 0.0);
    }
  CHECK(t1.covers(5));
  CHECK(!t1.covers(7));
  // interpolation is exact at nodes and bounded between them
  CHECK(t1.interpolate(4, 0.75) == t1.value(4, 0.75));
  const double mid = t1.interpolate(4, 1.0);
  CHECK(mid >= std::min(t1.value(4, 0.75), t1.value(4, 1.5)));
  CHECK(mid <= std::max(t1.value(4, 0.75), t1.value(4, 1.5)));
}

TEST_CASE("chi_sweep validates its grids") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  CHECK_THROWS_AS(chi_sweep(-1, {}, {0.0, 1.0}, geom, quad), std::invalid_argument);
  CHECK_THROWS_AS(chi_sweep(-1, {4}, {}, geom, quad), std::invalid_argument);
  CHECK_THROWS_AS(chi_sweep(-1, {4}, {1.0, 1.0}, geom, quad), std::invalid_argument);
  CHECK_THROWS_AS(chi_sweep(0, {4}, {0.0, 1.0}, geom, quad), std::invalid_argument);
}

TEST_CASE("table lookups outside coverage throw") {
  const ChiTable t = chi_sweep(-1, {4}, {0.5, 1.0}, BeamGeometry(), QuadratureSpec());
  CHECK_THROWS_AS(t.value(5, 0.5), CoverageError);
  CHECK_THROWS_AS(t.value(4, 0.7), CoverageError);
  CHECK_THROWS_AS(t.interpolate(4, 1.5), CoverageError);
}

TEST_CASE("chi table CSV has the documented shape") {
  const ChiTable t = chi_sweep(-1, {4}, {0.0, 1.0}, BeamGeometry(), QuadratureSpec());
  std::ostringstream os;
  t.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("l,m,zS_over_zR,chi\n", 0) == 0);
  CHECK(text.find("4,-1,0,") != std::string::npos);
  CHECK(text.find("4,-1,1,") != std::string::npos);
}

TEST_CASE("each m=-1 conversion has a single interior optimum in the shift") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  for (int l = 3; l <= 8; ++l) {
    std::vector<double> vals;
    for (int i = 0; i <= 60; ++i) vals.push_back(chi_at(l, -1, 3.0 * i / 60.0, geom, quad));
    int maxima = 0;
    for (size_t i = 1; i + 1 < vals.size(); ++i)
      if (vals[i] > vals[i - 1] + 1e-12 && vals[i] > vals[i + 1] + 1e-12) ++maxima;
    CHECK(maxima == 1);
    const size_t peak = static_cast<size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    CHECK(peak > 0);
    CHECK(peak < vals.size() - 1);
  }
}

TEST_CASE("peak conversion efficiency for l=4,5 sits near 0.77") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  for (int l : {4, 5}) {
    const double z = argmax_zeta(l, -1, geom, quad);
    const double chi2 = std::pow(chi_at(l, -1, z, geom, quad), 2);
    CHECK(chi2 > 0.67);
    CHECK(chi2 < 0.87);
  }
}

TEST_CASE("neighboring coefficients bunch together as l grows") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  std::vector<double> spread;
  for (int l = 4; l <= 10; ++l) {
    const double z = argmax_zeta(l, -1, geom, quad);
    const double a = chi_at(l - 1, -1, z, geom, quad);
    const double b = chi_at(l, -1, z, geom, quad);
    const double c = chi_at(l + 1, -1, z, geom, quad);
    spread.push_back(std::max({a, b, c}) - std::min({a, b, c}));
  }
  for (size_t i = 1; i < spread.size(); ++i) CHECK(spread[i] <= spread[i - 1] + 1e-3);
}

TEST_CASE("the optimal shift drifts less and less per unit l") {
  const BeamGeometry geom;
  const QuadratureSpec quad;
  std::vector<double> zstar;
  for (int l = 4; l <= 11; ++l) zstar.push_back(argmax_zeta(l, -1, geom, quad));
  std::vector<double> drift;
  for (size_t i = 1; i < zstar.size(); ++i) drift.push_back(std::abs(zstar[i] - zstar[i - 1]));
  for (size_t i = 1; i < drift.size(); ++i) CHECK(drift[i] < drift[i - 1]);
}
