// qudit_algebra.hpp — generalized Pauli operators X_d, Z_d, their commutator
// algebra, the Weyl operator basis, and decompositions of Hermitian/unitary
// matrices in that basis.

#pragma once

#include "oamgate/matrix.hpp"

namespace oamgate::algebra {

// X_d^m = sum_l |l (+) m><l| with (+) the cyclic shift on 1..d.  Any integer
// m is reduced mod d, so build_x(d, 0) and build_x(d, d) are the identity.
Matrix build_x(int d, int m);

// Z_d^m = diag(w^m, w^{2m}, ..., w^{dm}), w = exp(2 pi i / d).
Matrix build_z(int d, int m);

// Checks (X_d^k)† == X_d^{-k} and (Z_d^k)† == Z_d^{-k} entrywise to 1e-12.
bool adjoint_power_identity_check(int d, int k);

Matrix commutator(const Matrix& a, const Matrix& b);

// Weyl displacement D(j,k) = exp(-i pi j k / d) Z_d^j X_d^k, 0 <= j,k < d.
Matrix heisenberg_weyl(int d, int j, int k);

// Q_{j,k} = (1+i)/2 D(j,k) + (1-i)/2 D(j,k)†, Hermitian by construction.
// The d^2 of them are orthogonal with Tr(Q†Q) = d, so they form an
// orthonormal basis of the Hermitian matrices under <A,B> = Tr(A†B)/d.
Matrix q_basis(int d, int j, int k);

struct DecompositionCoefficients {
  enum class Kind { HermitianReal, UnitaryComplex };
  int dim = 0;
  Kind kind = Kind::HermitianReal;
  // grid(j, k): coefficient of Q_{j,k} (Hermitian kind, real entries) or of
  // X^j Z^k (unitary kind, complex entries).
  Matrix grid;
};

// A = sum_{j,k} C_{j,k} Q_{j,k} with real C, by Hilbert-Schmidt projection.
// Requires a Hermitian within 1e-10.
DecompositionCoefficients decompose_hermitian(const Matrix& a);

// U = sum_{j,k} g_{j,k} X^j Z^k, complex g, by projection onto the
// (orthogonal) X^j Z^k basis; falls back to a dense solve if the projection
// residual exceeds 1e-10.  Requires u unitary within 1e-10.
DecompositionCoefficients decompose_unitary(const Matrix& u);

Matrix reconstruct(const DecompositionCoefficients& coeffs);

// exp(iA) for Hermitian A, via eigendecomposition.
Matrix unitary_from_hermitian(const Matrix& a);

// Square root of a positive-semidefinite Hermitian matrix; eigenvalues in
// [-1e-10, 0) are clamped to zero.
Matrix sqrt_psd(const Matrix& a);

}  // namespace oamgate::algebra
