#include "oamgate/matrix.hpp"

#include "oamgate/io_util.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oamgate {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  Matrix prod = a.adjoint() * a;
  return is_identity(prod, tol);
}

bool is_identity(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  Matrix id = Matrix::Identity(a.rows(), a.cols());
  return max_abs_diff(a, id) <= tol;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hs_inner: dimension mismatch");
  return (a.adjoint() * b).trace();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

namespace {

std::string format_entry(Complex v) {
  std::string re = io::format_double(v.real());
  std::string im = io::format_double(v.imag());
  std::string out = re;
  if (!im.empty() && im[0] != '-') out += '+';
  out += im;
  out += 'j';
  return out;
}

Complex parse_entry(const std::string& token) {
  const char* s = token.c_str();
  char* end = nullptr;
  double re = std::strtod(s, &end);
  if (end == s) throw std::runtime_error("bad matrix entry: " + token);
  double im = std::strtod(end, const_cast<char**>(&end));
  if (*end != 'j') throw std::runtime_error("bad matrix entry: " + token);
  return {re, im};
}

}  // namespace

void write_matrix_text(std::ostream& os, const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("write_matrix_text: matrix not square");
  os << a.rows() << '\n';
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (c) os << ' ';
      os << format_entry(a(r, c));
    }
    os << '\n';
  }
}

Matrix read_matrix_text(std::istream& is) {
  int d = 0;
  if (!(is >> d) || d < 1) throw std::runtime_error("matrix text: bad dimension line");
  Matrix a(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      std::string token;
      if (!(is >> token)) throw std::runtime_error("matrix text: truncated input");
      a(r, c) = parse_entry(token);
    }
  return a;
}

}  // namespace oamgate
