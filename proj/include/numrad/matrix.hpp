#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace numrad {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the requested operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite entry, empty shape or a dimension above the supported maximum.
class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

/// A scalar argument is outside its admissible range.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Hard limit on either dimension of a matrix.
inline constexpr std::size_t kMaxDimension = 256;

/// Dense row-major complex matrix. Every instance holds only finite entries
/// and has 1 <= rows, cols <= kMaxDimension.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix scalar(std::size_t n, Complex value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::string shape() const;

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  /// Unchecked write access; the finiteness invariant is the caller's to keep.
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

using Vector = std::vector<Complex>;

/// Real (T + T*)/2 and imaginary (T - T*)/(2i) Hermitian parts of a square matrix.
struct CartesianPair {
  ComplexMatrix t1;
  ComplexMatrix t2;
};

ComplexMatrix adjoint(const ComplexMatrix& a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix subtract(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(Complex c, const ComplexMatrix& a);

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return subtract(a, b); }
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }
inline ComplexMatrix operator*(Complex c, const ComplexMatrix& a) { return scale(c, a); }

/// A^n for n >= 1.
ComplexMatrix power(const ComplexMatrix& a, int n);

Vector apply(const ComplexMatrix& a, std::span<const Complex> x);

CartesianPair cartesian_parts(const ComplexMatrix& t);

/// Block-diagonal [[r, 0], [0, s]].
ComplexMatrix direct_sum(const ComplexMatrix& r, const ComplexMatrix& s);

/// Square block matrix [[0, r], [s, 0]]; r is p x q and s is q x p.
ComplexMatrix off_diag_block(const ComplexMatrix& r, const ComplexMatrix& s);

double frobenius_norm(const ComplexMatrix& a);
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double rel_tol = 0.0);

/// Standard inner product <x, y> = sum x_i conj(y_i), linear in the first slot.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double vector_norm(std::span<const Complex> x);

}  // namespace numrad
