// gate_channel.hpp — logical qudit encoding over physical OAM modes, the
// ideal cyclic shift gate, and the lossy gate as a probabilistic channel
// with success probability p1 and Uhlmann fidelity.

#pragma once

#include "oamgate/lg_overlap.hpp"
#include "oamgate/matrix.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oamgate::channel {

// N consecutive physical OAM values starting at `base`, split into N/d
// indistinguishable logical sets of size d.
struct LogicalEncoding {
  int physical_count = 0;  // N, must be a multiple of d
  int dim = 0;             // d
  int base = 1;            // lowest physical OAM used

  LogicalEncoding(int physical_count_, int dim_, int base_);
};

// logical value in 1..d of physical mode l; cyclic across logical sets.
int logical_value(int l, const LogicalEncoding& enc);

// Pure state of one qudit: d amplitudes on physical modes base..base+d-1.
struct QuditState {
  int dim = 0;
  int base = 0;
  Vector amplitudes;  // unit norm within 1e-12

  QuditState(int dim_, int base_, Vector amplitudes_);
  static QuditState uniform(int dim, int base);

  int physical_mode(int slot) const { return base + slot; }
};

class DensityMatrix {
 public:
  // Validates Hermiticity (1e-12), unit trace (1e-12) and eigenvalues
  // >= -1e-10; throws std::invalid_argument otherwise.
  explicit DensityMatrix(Matrix rho);
  static DensityMatrix pure(const Vector& psi);

  const Matrix& matrix() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  Matrix rho_;
};

struct GateOutcome {
  double p1 = 0.0;
  DensityMatrix rho1;
  DensityMatrix rho_ideal;
  double fidelity = 0.0;
  std::vector<std::pair<int, double>> chi_used;  // (physical l, chi)

  // "d, m, zS_over_zR, p1, fidelity" followed by a "chi:" line listing the
  // per-mode coefficients.
  std::string report(int m, double zs_over_zr) const;
  std::string report_line(int m, double zs_over_zr) const;
};

// Shifts the amplitude at logical slot l to slot l (+) m, coefficients
// unchanged; applying it d times is the identity.
QuditState ideal_gate(const QuditState& state, int m);

// Lossy gate: amplitude C_l is scaled by chi_{l,m} and shifted as in the
// ideal gate; p1 = prod_l chi_{l,m}^2 over the d modes of the block, and
// rho1 is the renormalized success branch.  chi_by_slot[i] belongs to
// physical mode base+i.  Any chi = 0 raises DegenerateChannelError.
GateOutcome lossy_gate(const QuditState& state, int m, std::span<const double> chi_by_slot);

// Table-driven variant: looks up chi_{l,m}(zS/zR) for every occupied mode;
// missing entries raise CoverageError.
GateOutcome lossy_gate(const QuditState& state, int m, const overlap::ChiTable& chi,
                       double zs_over_zr);

// Uhlmann fidelity (Tr sqrt(sqrt(rho_ideal) rho1 sqrt(rho_ideal)))^2.
double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho1);

// Pure-target shortcut <psi|rho|psi>; equals the matrix formula when the
// target is |psi><psi|.
double fidelity_pure(const Vector& psi, const DensityMatrix& rho);

// p1 = prod chi^2.  Requires a non-empty list with every chi in [0, 1].
double success_probability(std::span<const double> chis);

// Diagnostic alternative: probability that a single photon in the
// superposition converts, sum |C_l|^2 chi_l^2.  Not used by the gate model.
double mean_conversion_probability(const QuditState& state, std::span<const double> chi_by_slot);

}  // namespace oamgate::channel
