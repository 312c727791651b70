#pragma once

#include <optional>
#include <span>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

/// The cyclic Jacobi iteration did not reach the off-diagonal threshold.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double off_diagonal)
      : Error(what), off_diagonal_(off_diagonal) {}
  double off_diagonal() const { return off_diagonal_; }

 private:
  double off_diagonal_;
};

/// sigma_min <= kInvertibilityThreshold * sigma_max.
class NotInvertibleError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kInvertibilityThreshold = 1e-10;
inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr double kJacobiTolerance = 1e-14;

struct EigenResult {
  std::vector<double> values;            // ascending
  std::optional<ComplexMatrix> vectors;  // column k pairs with values[k]
};

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
/// The input is symmetrized as (h + h*)/2 first; it must be Hermitian to 1e-12
/// relative entrywise or a DimensionError is raised.
EigenResult hermitian_eigen(const ComplexMatrix& h, bool want_vectors = false);

/// Largest eigenvalue of a Hermitian matrix via Householder reduction to
/// tridiagonal form and Sturm-sequence bisection. Only the lower triangle of
/// `h` is read.
double largest_eigenvalue(const ComplexMatrix& h);

/// Singular values in descending order, min(rows, cols) of them. Computed by
/// one-sided Jacobi on the columns of a, so small singular values keep their
/// relative accuracy.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Largest singular value.
double operator_norm(const ComplexMatrix& a);

/// inf over unit x of |a x|^2, i.e. the squared smallest singular value.
double alpha(const ComplexMatrix& a);

ComplexMatrix inverse(const ComplexMatrix& a);

/// Whether sigma_min > kInvertibilityThreshold * sigma_max.
bool is_invertible(const ComplexMatrix& a);

namespace detail {

/// Largest eigenvalue of the n x n Hermitian matrix stored row-major in
/// `h`. The buffer is overwritten. Used on hot paths to avoid allocation.
double largest_eigenvalue_inplace(std::span<Complex> h, std::size_t n);

}  // namespace detail
}  // namespace numrad
