#include "oamgate/gate_channel.hpp"

#include "oamgate/errors.hpp"
#include "oamgate/io_util.hpp"
#include "oamgate/qudit_algebra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oamgate::channel {

namespace {

int mod_euclid(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

LogicalEncoding::LogicalEncoding(int physical_count_, int dim_, int base_)
    : physical_count(physical_count_), dim(dim_), base(base_) {
  if (dim < 2) throw std::invalid_argument("LogicalEncoding: d must be >= 2");
  if (physical_count < dim || physical_count % dim != 0)
    throw std::invalid_argument("LogicalEncoding: N must be a positive multiple of d");
}

int logical_value(int l, const LogicalEncoding& enc) {
  if (l < enc.base || l >= enc.base + enc.physical_count)
    throw std::out_of_range("logical_value: physical OAM outside the encoded range");
  return mod_euclid(l - enc.base, enc.dim) + 1;
}

QuditState::QuditState(int dim_, int base_, Vector amplitudes_)
    : dim(dim_), base(base_), amplitudes(std::move(amplitudes_)) {
  if (dim < 2) throw std::invalid_argument("QuditState: d must be >= 2");
  if (amplitudes.size() != dim)
    throw std::invalid_argument("QuditState: amplitude count must equal d");
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12)
    throw std::invalid_argument("QuditState: amplitudes must be normalized");
}

QuditState QuditState::uniform(int dim, int base) {
  Vector amps = Vector::Constant(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return QuditState(dim, base, std::move(amps));
}

DensityMatrix::DensityMatrix(Matrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  if (!is_hermitian(rho_, 1e-12)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace must be 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

QuditState ideal_gate(const QuditState& state, int m) {
  Vector out = Vector::Zero(state.dim);
  for (int i = 0; i < state.dim; ++i) out(mod_euclid(i + m, state.dim)) = state.amplitudes(i);
  return QuditState(state.dim, state.base, std::move(out));
}

GateOutcome lossy_gate(const QuditState& state, int m, std::span<const double> chi_by_slot) {
  const int d = state.dim;
  if (static_cast<int>(chi_by_slot.size()) != d)
    throw std::invalid_argument("lossy_gate: need one chi per mode of the state");
  for (int i = 0; i < d; ++i) {
    const double c = chi_by_slot[static_cast<size_t>(i)];
    if (!(c >= 0.0) || c > 1.0)
      throw std::invalid_argument("lossy_gate: chi values must lie in [0, 1]");
    if (c == 0.0)
      throw DegenerateChannelError("lossy_gate: chi = 0 at physical mode l=" +
                                   std::to_string(state.physical_mode(i)));
  }

  const QuditState ideal = ideal_gate(state, m);

  Vector damped = Vector::Zero(d);
  double p1 = 1.0;
  for (int i = 0; i < d; ++i) {
    const double c = chi_by_slot[static_cast<size_t>(i)];
    damped(mod_euclid(i + m, d)) = c * state.amplitudes(i);
    p1 *= c * c;
  }
  damped /= damped.norm();

  GateOutcome out{
      p1,
      DensityMatrix::pure(damped),
      DensityMatrix::pure(ideal.amplitudes),
      0.0,
      {},
  };
  out.fidelity = fidelity(out.rho_ideal, out.rho1);
  out.chi_used.reserve(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i)
    out.chi_used.emplace_back(state.physical_mode(i), chi_by_slot[static_cast<size_t>(i)]);
  return out;
}

GateOutcome lossy_gate(const QuditState& state, int m, const overlap::ChiTable& chi,
                       double zs_over_zr) {
  if (chi.m != m)
    throw CoverageError("lossy_gate: chi table was computed for m=" + std::to_string(chi.m) +
                        ", gate power is " + std::to_string(m));
  std::vector<double> values(static_cast<size_t>(state.dim));
  for (int i = 0; i < state.dim; ++i)
    values[static_cast<size_t>(i)] = chi.value(state.physical_mode(i), zs_over_zr);
  return lossy_gate(state, m, values);
}

namespace {

// Square root of a unit-trace density matrix with the eigenvalue noise floor
// zeroed, so that sqrt() does not amplify ~1e-16 residues into ~1e-8 terms.
Matrix sqrt_density(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals(i) = vals(i) < 1e-14 ? 0.0 : std::sqrt(vals(i));
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

double fidelity(const DensityMatrix& rho_ideal, const DensityMatrix& rho1) {
  if (rho_ideal.dim() != rho1.dim())
    throw std::invalid_argument("fidelity: density matrices of different dimension");
  // (Tr sqrt(sqrt(ri) r1 sqrt(ri)))^2 written as the nuclear norm of
  // sqrt(ri) sqrt(r1); singular values come out of the SVD without a final
  // sqrt, which keeps the result accurate near F = 1.
  const Matrix product = sqrt_density(rho_ideal.matrix()) * sqrt_density(rho1.matrix());
  Eigen::JacobiSVD<Matrix> svd(product);
  const double trace_root = svd.singularValues().sum();
  return std::clamp(trace_root * trace_root, 0.0, 1.0);
}

double fidelity_pure(const Vector& psi, const DensityMatrix& rho) {
  if (psi.size() != rho.dim()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const Complex val = (psi.adjoint() * rho.matrix() * psi)(0, 0);
  return std::clamp(val.real(), 0.0, 1.0);
}

double success_probability(std::span<const double> chis) {
  if (chis.empty()) throw std::invalid_argument("success_probability: empty chi list");
  double p = 1.0;
  for (double c : chis) {
    if (!(c >= 0.0) || c > 1.0)
      throw std::invalid_argument("success_probability: chi values must lie in [0, 1]");
    p *= c * c;
  }
  return p;
}

double mean_conversion_probability(const QuditState& state, std::span<const double> chi_by_slot) {
  if (static_cast<int>(chi_by_slot.size()) != state.dim)
    throw std::invalid_argument("mean_conversion_probability: need one chi per mode");
  double acc = 0.0;
  for (int i = 0; i < state.dim; ++i) {
    const double c = chi_by_slot[static_cast<size_t>(i)];
    acc += std::norm(state.amplitudes(i)) * c * c;
  }
  return acc;
}

std::string GateOutcome::report_line(int m, double zs_over_zr) const {
  std::ostringstream os;
  os << rho1.dim() << ", " << m << ", " << io::format_sig(zs_over_zr, 10) << ", "
     << io::format_sig(p1, 10) << ", " << io::format_sig(fidelity, 10);
  return os.str();
}

std::string GateOutcome::report(int m, double zs_over_zr) const {
  std::ostringstream os;
  os << report_line(m, zs_over_zr) << '\n' << "chi:";
  for (const auto& [l, c] : chi_used) os << ' ' << l << ':' << io::format_sig(c, 10);
  os << '\n';
  return os.str();
}

}  // namespace oamgate::channel
