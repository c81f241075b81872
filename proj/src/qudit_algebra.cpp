#include "oamgate/qudit_algebra.hpp"

#include "oamgate/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace oamgate::algebra {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dimension(int d) {
  if (d < 2) throw std::invalid_argument("invalid dimension: d must be >= 2");
}

int mod_euclid(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

// exp(2 pi i q / d) with q reduced mod d; quarter-turn roots are returned
// exactly so that identity and Pauli entries carry no trig residue.
Complex root_of_unity(int q, int d) {
  int r = mod_euclid(q, d);
  if ((4 * r) % d == 0) {
    switch ((4 * r) / d) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
    }
  }
  double angle = 2.0 * kPi * r / d;
  return {std::cos(angle), std::sin(angle)};
}

void require_index(int d, int v, const char* name) {
  if (v < 0 || v >= d) throw std::out_of_range(std::string(name) + " out of range [0, d)");
}

}  // namespace

Matrix build_x(int d, int m) {
  require_dimension(d);
  Matrix x = Matrix::Zero(d, d);
  for (int col = 0; col < d; ++col) x(mod_euclid(col + m, d), col) = 1.0;
  return x;
}

Matrix build_z(int d, int m) {
  require_dimension(d);
  Matrix z = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) z(j, j) = root_of_unity(m * (j + 1), d);
  return z;
}

bool adjoint_power_identity_check(int d, int k) {
  require_dimension(d);
  require_index(d, k, "k");
  const double tol = 1e-12;
  return max_abs_diff(dagger(build_x(d, k)), build_x(d, -k)) <= tol &&
         max_abs_diff(dagger(build_z(d, k)), build_z(d, -k)) <= tol;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

Matrix heisenberg_weyl(int d, int j, int k) {
  require_dimension(d);
  require_index(d, j, "j");
  require_index(d, k, "k");
  double angle = -kPi * j * k / d;
  Complex phase(std::cos(angle), std::sin(angle));
  return phase * (build_z(d, j) * build_x(d, k));
}

Matrix q_basis(int d, int j, int k) {
  Matrix dee = heisenberg_weyl(d, j, k);
  const Complex half_plus(0.5, 0.5);
  const Complex half_minus(0.5, -0.5);
  return half_plus * dee + half_minus * dagger(dee);
}

namespace {

// Dense solve of sum c_i B_i = target over the given basis, used only if
// projection leaves a residual (guards convention errors).
Matrix solve_in_basis(const std::vector<Matrix>& basis, const Matrix& target) {
  const int d = static_cast<int>(target.rows());
  const int n = d * d;
  Eigen::MatrixXcd system(n, n);
  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) {
    const Matrix& b = basis[static_cast<size_t>(i)];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) system(r * d + c, i) = b(r, c);
  }
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) rhs(r * d + c) = target(r, c);
  Eigen::VectorXcd sol = system.colPivHouseholderQr().solve(rhs);
  Matrix grid(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) grid(j, k) = sol(j * d + k);
  return grid;
}

}  // namespace

DecompositionCoefficients decompose_hermitian(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("decompose_hermitian: matrix not square");
  const int d = static_cast<int>(a.rows());
  require_dimension(d);
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("decompose_hermitian: non-Hermitian input");

  DecompositionCoefficients out;
  out.dim = d;
  out.kind = DecompositionCoefficients::Kind::HermitianReal;
  out.grid = Matrix::Zero(d, d);

  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(d * d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) basis.push_back(q_basis(d, j, k));

  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      out.grid(j, k) = hs_inner(basis[static_cast<size_t>(j * d + k)], a).real() / d;

  if (max_abs_diff(reconstruct(out), a) > 1e-10) {
    Matrix solved = solve_in_basis(basis, a);
    out.grid = solved.real().cast<Complex>();
    if (max_abs_diff(reconstruct(out), a) > 1e-10)
      throw NumericalAccuracyError("decompose_hermitian: reconstruction residual above 1e-10");
  }
  return out;
}

DecompositionCoefficients decompose_unitary(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("decompose_unitary: matrix not square");
  const int d = static_cast<int>(u.rows());
  require_dimension(d);
  if (!is_unitary(u, 1e-10)) throw std::invalid_argument("decompose_unitary: non-unitary input");

  DecompositionCoefficients out;
  out.dim = d;
  out.kind = DecompositionCoefficients::Kind::UnitaryComplex;
  out.grid = Matrix::Zero(d, d);

  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(d * d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) basis.push_back(build_x(d, j) * build_z(d, k));

  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) out.grid(j, k) = hs_inner(basis[static_cast<size_t>(j * d + k)], u) / static_cast<double>(d);

  if (max_abs_diff(reconstruct(out), u) > 1e-10) {
    out.grid = solve_in_basis(basis, u);
    if (max_abs_diff(reconstruct(out), u) > 1e-10)
      throw NumericalAccuracyError("decompose_unitary: reconstruction residual above 1e-10");
  }
  return out;
}

Matrix reconstruct(const DecompositionCoefficients& coeffs) {
  const int d = coeffs.dim;
  require_dimension(d);
  Matrix acc = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (coeffs.kind == DecompositionCoefficients::Kind::HermitianReal)
        acc += coeffs.grid(j, k).real() * q_basis(d, j, k);
      else
        acc += coeffs.grid(j, k) * (build_x(d, j) * build_z(d, k));
    }
  return acc;
}

Matrix unitary_from_hermitian(const Matrix& a) {
  if (!is_hermitian(a, 1e-10))
    throw std::invalid_argument("unitary_from_hermitian: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const auto& vals = es.eigenvalues();
  const Matrix& vecs = es.eigenvectors();
  Vector phases(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    phases(i) = Complex(std::cos(vals(i)), std::sin(vals(i)));
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Matrix sqrt_psd(const Matrix& a) {
  if (!is_hermitian(a, 1e-10)) throw std::invalid_argument("sqrt_psd: non-Hermitian input");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -1e-10)
      throw std::invalid_argument("sqrt_psd: matrix is not positive semidefinite");
    if (vals(i) < 0.0) vals(i) = 0.0;
  }
  Eigen::VectorXd roots = vals.cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace oamgate::algebra
