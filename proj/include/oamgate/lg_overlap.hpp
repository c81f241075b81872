// lg_overlap.hpp — Laguerre-Gaussian modes and the conversion coefficients
// chi_{l,m}(zS/zR) of the OAM-changing memory readout.

#pragma once

#include "oamgate/matrix.hpp"

#include <iosfwd>
#include <vector>

namespace oamgate::overlap {

// Signal and driving beams share waist radius w0 and Rayleigh range zR; the
// driving beam's waist is displaced by zS along the axis while the atomic
// ensemble sits in the signal waist.  Sweeping operations treat zS as the
// control parameter and override the stored value.
struct BeamGeometry {
  double w0 = 1.0;
  double zR = 1.0;
  double zS = 0.0;

  BeamGeometry() = default;
  BeamGeometry(double w0_, double zR_, double zS_ = 0.0);

  double zeta() const { return zS / zR; }
};

struct QuadratureSpec {
  int radial_points = 512;
  double radial_cutoff = 8.0;  // multiples of the largest beam radius involved
  const char* method = "gauss-legendre";
};

// Evaluated chi_{l,m} on a (l, zS/zR) grid, all values in [0, 1].
struct ChiTable {
  int m = 0;
  std::vector<int> l_range;
  std::vector<double> zs_grid;  // zS/zR, strictly increasing
  Eigen::MatrixXd values;       // row: l_range index, col: zs_grid index

  bool covers(int l) const;
  // Exact grid lookup (zS/zR matched within 1e-9); throws CoverageError.
  double value(int l, double zs_over_zr) const;
  // Linear interpolation inside the grid range; throws CoverageError outside.
  double interpolate(int l, double zs_over_zr) const;

  // CSV with header "l,m,zS_over_zR,chi", 10 significant digits.
  void write_csv(std::ostream& os) const;
};

// Unit-power LG mode amplitude (radial index p = 0 only): beam-radius
// scaling w(z), wavefront curvature, Gouy phase and the e^{il phi} factor.
// The wave number follows from the beam parameters, k = 2 zR / w0^2.
Complex lg_amplitude(int l, int p, const BeamGeometry& geom, double r, double phi, double z);

// Conversion coefficient for changing OAM l by m (drive OAM m, created mode
// l - m).  Modulus of the three-mode overlap at the ensemble plane, scaled
// by the created mode's cross-sectional area, clipped to [0, 1]:
//
//   chi = clip( N * | integral u*_{l-m}(rho, 0) u_l(rho, 0) u*_m(rho, zS) d^2rho | )
//   N   = kappa * sqrt(pi w0^2 (|l-m| + 1) / 2)
//
// The azimuthal integral is done analytically (it enforces OAM conservation),
// leaving one radial Gauss-Legendre quadrature whose convergence is verified
// by doubling the point count; disagreement beyond 1e-8 raises
// NumericalAccuracyError.  Requires m != 0.
double overlap_chi(int l, int m, double zS, const BeamGeometry& geom, const QuadratureSpec& quad);

// The factor N applied to the raw three-mode overlap integral.
double chi_normalization(int l, int m, const BeamGeometry& geom);

// chi over a full (l, zS/zR) grid.  Grid points are evaluated concurrently;
// assembly order is deterministic.
ChiTable chi_sweep(int m, const std::vector<int>& l_range, const std::vector<double>& zs_grid,
                   const BeamGeometry& geom, const QuadratureSpec& quad);

}  // namespace oamgate::overlap
