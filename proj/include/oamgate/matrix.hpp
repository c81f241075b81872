// matrix.hpp — dense complex matrix carrier and predicates shared by all modules

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>

namespace oamgate {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

bool is_hermitian(const Matrix& a, double tol);
bool is_unitary(const Matrix& a, double tol);
bool is_identity(const Matrix& a, double tol);

inline Matrix dagger(const Matrix& a) { return a.adjoint(); }

// Hilbert-Schmidt inner product Tr(a† b)
Complex hs_inner(const Matrix& a, const Matrix& b);

// largest entrywise |a - b|
double max_abs_diff(const Matrix& a, const Matrix& b);

// Plain-text serialization: first line the dimension, then d rows of
// d whitespace-separated "re+imj" entries.
void write_matrix_text(std::ostream& os, const Matrix& a);
Matrix read_matrix_text(std::istream& is);

}  // namespace oamgate
