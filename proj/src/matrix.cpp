#include "numrad/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace numrad {
namespace {

void check_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidMatrixError("matrix dimensions must be positive");
  }
  if (rows > kMaxDimension || cols > kMaxDimension) {
    std::ostringstream os;
    os << "matrix dimension " << rows << "x" << cols << " exceeds the supported maximum "
       << kMaxDimension;
    throw InvalidMatrixError(os.str());
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw DimensionError(std::string(what) + " requires a square matrix, got " + a.shape());
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + a.shape() + " vs " +
                         b.shape());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  check_shape(rows, cols);
  data_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_shape(rows, cols);
  if (data_.size() != rows * cols) {
    std::ostringstream os;
    os << "expected " << rows * cols << " entries for a " << rows << "x" << cols
       << " matrix, got " << data_.size();
    throw InvalidMatrixError(os.str());
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidMatrixError("matrix entries must be finite");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  check_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw InvalidMatrixError("ragged initializer for matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidMatrixError("matrix entries must be finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) { return scalar(n, 1.0); }

ComplexMatrix ComplexMatrix::scalar(std::size_t n, Complex value) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = value;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::string ComplexMatrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: dimension mismatch " + a.shape() + " * " + b.shape());
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix scale(Complex c, const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= c;
  return out;
}

ComplexMatrix power(const ComplexMatrix& a, int n) {
  require_square(a, "power");
  if (n < 1) throw DimensionError("power: exponent must be at least 1");
  ComplexMatrix out = a;
  for (int k = 1; k < n; ++k) out = multiply(out, a);
  return out;
}

Vector apply(const ComplexMatrix& a, std::span<const Complex> x) {
  if (x.size() != a.cols()) {
    throw DimensionError("apply: vector of length " + std::to_string(x.size()) +
                         " does not conform to " + a.shape());
  }
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

CartesianPair cartesian_parts(const ComplexMatrix& t) {
  require_square(t, "cartesian_parts");
  const std::size_t n = t.rows();
  CartesianPair parts{ComplexMatrix(n, n), ComplexMatrix(n, n)};
  const Complex half_over_i{0.0, -0.5};
  // Fill (i, j) for i <= j and mirror, so both parts are exactly Hermitian.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex a = t(i, j);
      const Complex b = std::conj(t(j, i));
      Complex re = 0.5 * (a + b);
      Complex im = half_over_i * (a - b);
      if (i == j) {
        re = re.real();
        im = im.real();
      }
      parts.t1(i, j) = re;
      parts.t1(j, i) = std::conj(re);
      parts.t2(i, j) = im;
      parts.t2(j, i) = std::conj(im);
    }
  }
  return parts;
}

ComplexMatrix direct_sum(const ComplexMatrix& r, const ComplexMatrix& s) {
  require_square(r, "direct_sum");
  require_square(s, "direct_sum");
  const std::size_t p = r.rows();
  ComplexMatrix out(p + s.rows(), p + s.rows());
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) out(i, j) = r(i, j);
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.rows(); ++j) out(p + i, p + j) = s(i, j);
  return out;
}

ComplexMatrix off_diag_block(const ComplexMatrix& r, const ComplexMatrix& s) {
  if (r.rows() != s.cols() || r.cols() != s.rows()) {
    throw DimensionError("off_diag_block: blocks are not conformable, R is " + r.shape() +
                         " and S is " + s.shape());
  }
  const std::size_t p = r.rows();
  const std::size_t q = r.cols();
  ComplexMatrix out(p + q, p + q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) out(i, p + j) = r(i, j);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < p; ++j) out(p + i, j) = s(i, j);
  return out;
}

double frobenius_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (const Complex& z : a.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_difference");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return worst;
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!a.is_square()) return false;
  const double bound = rel_tol * frobenius_norm(a);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > bound) return false;
  return true;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw DimensionError("inner: vector lengths differ");
  Complex acc{};
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
  return acc;
}

double vector_norm(std::span<const Complex> x) {
  double acc = 0.0;
  for (const Complex& z : x) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace numrad
