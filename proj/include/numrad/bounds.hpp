#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/radius.hpp"

namespace numrad {

inline constexpr double kDefaultTolerance = 1e-9;

/// One machine-checkable inequality or identity about the numerical radius.
enum class CheckId {
  NormSandwich,             // |T|/2 <= w(T) <= |T|
  PowerInequality,          // w(T^n) <= w(T)^n
  NormalEquality,           // T normal => w(T) = |T|
  ProductBound,             // w(RS) <= 4 w(R) w(S)
  CommutingProductBound,    // RS = SR => w(RS) <= 2 w(R) w(S)
  DirectSumRadius,          // w(R (+) S) = max(w(R), w(S))
  BlockNormIdentity,        // |R (+) S| = |[[0,R],[S,0]]| = max(|R|, |S|)
  OffDiagonalRadiusBounds,  // max(w((RS)^n), w((SR)^n))^(1/2n) <= w(T) <= (|R|+|S|)/2
  NormAlphaBound,           // |T|^2 + max(a(T), a(T*)) <= 2 w(T)^2 + D(T)
  RefinedNormChain,         // |T| <= sqrt(2 w^2 - max a + D) <= 2 w
  DefectBound,              // D(T) <= 2 w(T)^2
  Sqrt2NormBound,           // |A| <= sqrt2 w(A); false in general, recorded only
  ConditionalSqrt2Bound,    // D(R) <= |R^-1|^-2 => |R| <= sqrt2 w(R)
  ConditionalProductBound,  // both hypotheses above => w(RS) <= 2 w(R) w(S)
  OffDiagonalEquality,      // (|R|+|S|)^2 <= 2 g(T) => w(T) = (|R|+|S|)/2
  ScalarBlockCondition,     // min(|r - conj s|^2, |r + conj s|^2) <= (|r| - |s|)^2
};

enum class Status { Holds, Vacuous, Violation };

std::string_view to_string(CheckId id);
std::string_view to_string(Status status);
std::optional<CheckId> check_id_from_string(std::string_view name);
std::optional<Status> status_from_string(std::string_view name);

struct CheckVerdict {
  CheckId id = CheckId::NormSandwich;
  int power = 0;  // n for PowerInequality / OffDiagonalRadiusBounds, else 0
  Status status = Status::Holds;
  double slack = 0.0;      // rhs - lhs; for identities, minus the absolute residual
  double threshold = 0.0;  // violation iff slack < -threshold
  std::optional<double> hypothesis_slack;
  std::vector<double> parts;  // component slacks or residuals, check specific
  bool informational = false;  // a violation here is data, not a failure

  bool is_failure() const { return status == Status::Violation && !informational; }
};

/// Everything the checks need about a single operator, computed once.
struct OperatorQuantities {
  double norm = 0.0;
  RadiusEstimate radius;
  double alpha_t = 0.0;
  double alpha_tstar = 0.0;
  double dee = 0.0;
  double gee = 0.0;
  double sigma_min = 0.0;
  bool invertible = false;
};

OperatorQuantities measure(const ComplexMatrix& t);

struct BoundsReport {
  double norm = 0.0;
  double radius = 0.0;
  double alpha_t = 0.0;
  double alpha_tstar = 0.0;
  double dee = 0.0;
  double gee = 0.0;
  RadiusEstimate estimate;
  std::vector<CheckVerdict> checks;
};

/// D(T) = 2 min(|Re T|^2, |Im T|^2).
double dee(const ComplexMatrix& t);
/// The same quantity as min(|T - T*|^2, |T + T*|^2) / 2.
double dee_from_sums(const ComplexMatrix& t);
/// g(T) = |T|^2 + max(a(T), a(T*)) - D(T).
double gee(const ComplexMatrix& t);

CheckVerdict check_norm_sandwich(const OperatorQuantities& q, double tol);
CheckVerdict check_power_inequality(const OperatorQuantities& q, const ComplexMatrix& t, int n,
                                    double tol);
CheckVerdict check_normal_equality(const OperatorQuantities& q, const ComplexMatrix& t,
                                   double tol);
CheckVerdict check_norm_alpha_bound(const OperatorQuantities& q, double tol);
CheckVerdict check_refined_norm_chain(const OperatorQuantities& q, double tol);
CheckVerdict check_defect_bound(const OperatorQuantities& q, double tol);
CheckVerdict check_sqrt2_norm_bound(const OperatorQuantities& q, double tol);
CheckVerdict check_conditional_sqrt2_bound(const OperatorQuantities& q, double tol);

CheckVerdict check_norm_alpha_bound(const ComplexMatrix& t, double tol = kDefaultTolerance);
CheckVerdict check_refined_norm_chain(const ComplexMatrix& t, double tol = kDefaultTolerance);
CheckVerdict check_defect_bound(const ComplexMatrix& t, double tol = kDefaultTolerance);

/// Conditional sqrt2 bound for R alone, or the conditional product bound when
/// S is supplied. A singular operand makes the verdict vacuous.
CheckVerdict check_conditional_sqrt2(const ComplexMatrix& r, const std::optional<ComplexMatrix>& s,
                                     double tol = kDefaultTolerance);

CheckVerdict check_product_bound(const ComplexMatrix& r, const ComplexMatrix& s,
                                 double tol = kDefaultTolerance);

/// Raised when the commuting product bound is asked of a non-commuting pair.
class NotCommutingError : public Error {
 public:
  using Error::Error;
};

CheckVerdict check_commuting_product_bound(const ComplexMatrix& r, const ComplexMatrix& s,
                                           double tol = kDefaultTolerance);
CheckVerdict check_direct_sum_radius(const ComplexMatrix& r, const ComplexMatrix& s,
                                     double tol = kDefaultTolerance);
CheckVerdict check_block_norm_identity(const ComplexMatrix& r, const ComplexMatrix& s,
                                       double tol = kDefaultTolerance);
CheckVerdict check_off_diagonal_bounds(const ComplexMatrix& r, const ComplexMatrix& s, int n,
                                       double tol = kDefaultTolerance);
CheckVerdict check_off_diagonal_equality(const ComplexMatrix& r, const ComplexMatrix& s,
                                         double tol = kDefaultTolerance);
CheckVerdict check_scalar_block_condition(Complex r, Complex s, double tol = kDefaultTolerance);

BoundsReport bounds_report(const ComplexMatrix& t, double tol = kDefaultTolerance);

struct PairOptions {
  bool commuting = false;
  std::vector<int> off_diagonal_powers{1, 2, 3};
  /// Product, direct-sum and block-norm checks (square blocks of equal size only).
  bool background = true;
};

struct PairReport {
  double r_norm = 0.0;
  double s_norm = 0.0;
  double block_radius = 0.0;     // w([[0,R],[S,0]])
  double half_norm_sum = 0.0;    // (|R| + |S|)/2
  double block_gee = 0.0;
  std::vector<CheckVerdict> checks;
};

PairReport pair_report(const ComplexMatrix& r, const ComplexMatrix& s,
                       double tol = kDefaultTolerance, const PairOptions& options = {});

/// Whether a is c * I for some scalar c.
bool is_scalar_matrix(const ComplexMatrix& a);

}  // namespace numrad
