#include "oamgate/lg_overlap.hpp"

#include "oamgate/errors.hpp"
#include "oamgate/io_util.hpp"
#include "oamgate/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace oamgate::overlap {

namespace {

constexpr double kPi = std::numbers::pi;

// Calibration constant of the overlap normalization.  Anchored so that the
// m = -1 qubit gate on modes (4, 5) reaches success probability ~0.6 at the
// fidelity-optimal shift, while chi stays below 1 across the working domain
// (|l| <= 14, |m| <= 2, zS <= 3 zR).
constexpr double kChiCalibration = 1.3765;

// Quadrature agreement demanded between n and 2n radial points.
constexpr double kRefinementTol = 1e-8;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Radius that bounds the bulk of mode |n| at local beam radius w: the ring
// sits at w sqrt(n/2), one extra width on top.
double mode_radius(int n, double w) { return w * std::sqrt(0.5 * n + 1.0); }

struct PlaneParams {
  double w;        // beam radius at the plane
  double inv_r;    // 1/R(z), curvature
  double gouy;     // Gouy phase angle
};

PlaneParams plane_params(const BeamGeometry& geom, double z) {
  PlaneParams p;
  const double zr = geom.zR;
  p.w = geom.w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
  p.inv_r = z / (z * z + zr * zr);
  p.gouy = std::atan2(z, zr);
  return p;
}

}  // namespace

BeamGeometry::BeamGeometry(double w0_, double zR_, double zS_) : w0(w0_), zR(zR_), zS(zS_) {
  if (!(w0 > 0.0)) throw std::invalid_argument("BeamGeometry: w0 must be positive");
  if (!(zR > 0.0)) throw std::invalid_argument("BeamGeometry: zR must be positive");
}

Complex lg_amplitude(int l, int p, const BeamGeometry& geom, double r, double phi, double z) {
  if (p != 0) throw std::invalid_argument("lg_amplitude: unsupported radial index, p must be 0");
  if (!(geom.w0 > 0.0) || !(geom.zR > 0.0))
    throw std::invalid_argument("lg_amplitude: invalid beam geometry");

  const int n = std::abs(l);
  const PlaneParams pp = plane_params(geom, z);
  const double k = 2.0 * geom.zR / (geom.w0 * geom.w0);

  const double norm = std::sqrt(2.0 / (kPi * factorial(n)));
  const double x = std::numbers::sqrt2 * r / pp.w;
  double radial = norm / pp.w * std::exp(-(r * r) / (pp.w * pp.w));
  for (int i = 0; i < n; ++i) radial *= x;

  const double phase = -0.5 * k * r * r * pp.inv_r + l * phi + (n + 1) * pp.gouy;
  return radial * Complex(std::cos(phase), std::sin(phase));
}

double chi_normalization(int l, int m, const BeamGeometry& geom) {
  if (m == 0) throw std::invalid_argument("chi_normalization: drive OAM m must be nonzero");
  const double area_out = kPi * geom.w0 * geom.w0 * (std::abs(l - m) + 1) * 0.5;
  return kChiCalibration * std::sqrt(area_out);
}

double overlap_chi(int l, int m, double zS, const BeamGeometry& geom, const QuadratureSpec& quad) {
  if (m == 0) throw std::invalid_argument("overlap_chi: drive OAM m must be nonzero");
  if (quad.radial_points < 2) throw std::invalid_argument("overlap_chi: too few radial points");
  if (!(quad.radial_cutoff > 0.0)) throw std::invalid_argument("overlap_chi: bad radial cutoff");

  const int n_out = std::abs(l - m);
  const int n_in = std::abs(l);
  const int n_drive = std::abs(m);

  const double w_shift = plane_params(geom, zS).w;
  const double r_cut = quad.radial_cutoff * std::max({mode_radius(n_out, geom.w0),
                                                      mode_radius(n_in, geom.w0),
                                                      mode_radius(n_drive, w_shift)});

  // The azimuthal factors multiply to exp(i(l - (l-m) - m)phi) = 1, so the
  // phi integral contributes 2 pi exactly and one radial quadrature is left.
  auto radial_overlap = [&](int points) {
    quad::Rule rule = quad::gauss_legendre_on(points, 0.0, r_cut);
    Complex acc(0.0, 0.0);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = rule.nodes[i];
      Complex f = std::conj(lg_amplitude(l - m, 0, geom, r, 0.0, 0.0)) *
                  lg_amplitude(l, 0, geom, r, 0.0, 0.0) *
                  std::conj(lg_amplitude(m, 0, geom, r, 0.0, zS));
      acc += rule.weights[i] * f * r;
    }
    return 2.0 * kPi * acc;
  };

  const double scale = chi_normalization(l, m, geom);

  const double coarse = scale * std::abs(radial_overlap(quad.radial_points));
  const double fine = scale * std::abs(radial_overlap(2 * quad.radial_points));
  if (std::abs(coarse - fine) > kRefinementTol)
    throw NumericalAccuracyError(
        "overlap_chi: radial quadrature not converged at l=" + std::to_string(l) +
        " m=" + std::to_string(m) + " zS/zR=" + io::format_double(zS / geom.zR));

  return std::clamp(coarse, 0.0, 1.0);
}

bool ChiTable::covers(int l) const {
  return std::find(l_range.begin(), l_range.end(), l) != l_range.end();
}

namespace {

size_t find_l_row(const ChiTable& t, int l) {
  auto it = std::find(t.l_range.begin(), t.l_range.end(), l);
  if (it == t.l_range.end())
    throw CoverageError("chi table does not cover l=" + std::to_string(l));
  return static_cast<size_t>(it - t.l_range.begin());
}

}  // namespace

double ChiTable::value(int l, double zs_over_zr) const {
  const size_t row = find_l_row(*this, l);
  for (size_t j = 0; j < zs_grid.size(); ++j)
    if (std::abs(zs_grid[j] - zs_over_zr) <= 1e-9)
      return values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j));
  throw CoverageError("chi table has no grid point at zS/zR=" + io::format_double(zs_over_zr));
}

double ChiTable::interpolate(int l, double zs_over_zr) const {
  const size_t row = find_l_row(*this, l);
  if (zs_grid.empty()) throw CoverageError("chi table is empty");
  if (zs_over_zr < zs_grid.front() - 1e-12 || zs_over_zr > zs_grid.back() + 1e-12)
    throw CoverageError("zS/zR=" + io::format_double(zs_over_zr) + " outside chi table range");
  auto hi = std::lower_bound(zs_grid.begin(), zs_grid.end(), zs_over_zr);
  if (hi == zs_grid.begin()) return values(static_cast<Eigen::Index>(row), 0);
  if (hi == zs_grid.end()) return values(static_cast<Eigen::Index>(row), values.cols() - 1);
  const size_t j1 = static_cast<size_t>(hi - zs_grid.begin());
  const size_t j0 = j1 - 1;
  const double t = (zs_over_zr - zs_grid[j0]) / (zs_grid[j1] - zs_grid[j0]);
  return (1.0 - t) * values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j0)) +
         t * values(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j1));
}

void ChiTable::write_csv(std::ostream& os) const {
  os << "l,m,zS_over_zR,chi\n";
  for (size_t i = 0; i < l_range.size(); ++i)
    for (size_t j = 0; j < zs_grid.size(); ++j)
      os << l_range[i] << ',' << m << ',' << io::format_sig(zs_grid[j], 10) << ','
         << io::format_sig(values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 10)
         << '\n';
}

ChiTable chi_sweep(int m, const std::vector<int>& l_range, const std::vector<double>& zs_grid,
                   const BeamGeometry& geom, const QuadratureSpec& quad) {
  if (m == 0) throw std::invalid_argument("chi_sweep: drive OAM m must be nonzero");
  if (l_range.empty() || zs_grid.empty())
    throw std::invalid_argument("chi_sweep: empty grid");
  for (size_t j = 1; j < zs_grid.size(); ++j)
    if (!(zs_grid[j] > zs_grid[j - 1]))
      throw std::invalid_argument("chi_sweep: zS grid must be strictly increasing");

  ChiTable table;
  table.m = m;
  table.l_range = l_range;
  table.zs_grid = zs_grid;
  table.values.resize(static_cast<Eigen::Index>(l_range.size()),
                      static_cast<Eigen::Index>(zs_grid.size()));

  const int cells = static_cast<int>(l_range.size() * zs_grid.size());
  io::parallel_for(cells, [&](int idx) {
    const int i = idx / static_cast<int>(zs_grid.size());
    const int j = idx % static_cast<int>(zs_grid.size());
    try {
      table.values(i, j) = overlap_chi(l_range[static_cast<size_t>(i)], m,
                                       zs_grid[static_cast<size_t>(j)] * geom.zR, geom, quad);
    } catch (const NumericalAccuracyError& e) {
      throw NumericalAccuracyError(std::string(e.what()) + " (chi_sweep grid point l=" +
                                   std::to_string(l_range[static_cast<size_t>(i)]) +
                                   ", zS/zR=" + io::format_double(zs_grid[static_cast<size_t>(j)]) + ")");
    }
  });
  return table;
}

}  // namespace oamgate::overlap
