#include "numrad/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "numrad/linalg.hpp"

namespace numrad {
namespace {

constexpr std::array<std::pair<CheckId, std::string_view>, 16> kCheckNames{{
    {CheckId::NormSandwich, "norm_sandwich"},
    {CheckId::PowerInequality, "power_inequality"},
    {CheckId::NormalEquality, "normal_equality"},
    {CheckId::ProductBound, "product_bound"},
    {CheckId::CommutingProductBound, "commuting_product_bound"},
    {CheckId::DirectSumRadius, "direct_sum_radius"},
    {CheckId::BlockNormIdentity, "block_norm_identity"},
    {CheckId::OffDiagonalRadiusBounds, "off_diagonal_radius_bounds"},
    {CheckId::NormAlphaBound, "norm_alpha_bound"},
    {CheckId::RefinedNormChain, "refined_norm_chain"},
    {CheckId::DefectBound, "defect_bound"},
    {CheckId::Sqrt2NormBound, "sqrt2_norm_bound"},
    {CheckId::ConditionalSqrt2Bound, "conditional_sqrt2_bound"},
    {CheckId::ConditionalProductBound, "conditional_product_bound"},
    {CheckId::OffDiagonalEquality, "off_diagonal_equality"},
    {CheckId::ScalarBlockCondition, "scalar_block_condition"},
}};

constexpr double kCommutatorTolerance = 1e-10;

double scaled(double tol, double scale) { return tol * std::max(1.0, scale); }

// Status for an inequality with an optional hypothesis. A hypothesis counts
// as satisfied when its slack is within tolerance of zero.
Status classify(double slack, double threshold, std::optional<double> hypothesis_slack = {},
                double hypothesis_threshold = 0.0) {
  if (hypothesis_slack && *hypothesis_slack < -hypothesis_threshold) return Status::Vacuous;
  return slack < -threshold ? Status::Violation : Status::Holds;
}

CheckVerdict inequality(CheckId id, double slack, double threshold) {
  CheckVerdict v;
  v.id = id;
  v.slack = slack;
  v.threshold = threshold;
  v.status = classify(slack, threshold);
  return v;
}

CheckVerdict identity_check(CheckId id, double residual, double threshold) {
  CheckVerdict v = inequality(id, -std::abs(residual), threshold);
  v.parts = {residual};
  return v;
}

double radius_of(const ComplexMatrix& a) { return numerical_radius(a).value; }

void require_equal_square(const ComplexMatrix& r, const ComplexMatrix& s, const char* what) {
  if (!r.is_square() || !s.is_square() || r.rows() != s.rows()) {
    throw DimensionError(std::string(what) + " requires square blocks of equal size, got " +
                         r.shape() + " and " + s.shape());
  }
}

}  // namespace

std::string_view to_string(CheckId id) {
  for (const auto& [key, name] : kCheckNames)
    if (key == id) return name;
  return "unknown";
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::Holds:
      return "holds";
    case Status::Vacuous:
      return "vacuous";
    case Status::Violation:
      return "violation";
  }
  return "unknown";
}

std::optional<CheckId> check_id_from_string(std::string_view name) {
  for (const auto& [key, text] : kCheckNames)
    if (text == name) return key;
  return std::nullopt;
}

std::optional<Status> status_from_string(std::string_view name) {
  for (Status s : {Status::Holds, Status::Vacuous, Status::Violation})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

double dee(const ComplexMatrix& t) {
  const CartesianPair parts = cartesian_parts(t);
  const double n1 = operator_norm(parts.t1);
  const double n2 = operator_norm(parts.t2);
  return 2.0 * std::min(n1 * n1, n2 * n2);
}

double dee_from_sums(const ComplexMatrix& t) {
  const ComplexMatrix ts = adjoint(t);
  const double minus = operator_norm(t - ts);
  const double plus = operator_norm(t + ts);
  return 0.5 * std::min(minus * minus, plus * plus);
}

double gee(const ComplexMatrix& t) {
  const double norm = operator_norm(t);
  return norm * norm + std::max(alpha(t), alpha(adjoint(t))) - dee(t);
}

OperatorQuantities measure(const ComplexMatrix& t) {
  if (!t.is_square()) throw DimensionError("measure requires a square matrix, got " + t.shape());
  OperatorQuantities q;
  const std::vector<double> sv = singular_values(t);
  q.norm = sv.front();
  q.sigma_min = sv.back();
  q.invertible = q.sigma_min > kInvertibilityThreshold * q.norm;
  q.radius = numerical_radius(t);
  q.alpha_t = q.sigma_min * q.sigma_min;
  q.alpha_tstar = alpha(adjoint(t));
  q.dee = dee(t);
  q.gee = q.norm * q.norm + std::max(q.alpha_t, q.alpha_tstar) - q.dee;
  return q;
}

CheckVerdict check_norm_sandwich(const OperatorQuantities& q, double tol) {
  const double w = q.radius.value;
  const double upper = q.norm - w;
  const double lower = w - 0.5 * q.norm;
  CheckVerdict v = inequality(CheckId::NormSandwich, std::min(upper, lower), scaled(tol, q.norm));
  v.parts = {lower, upper};
  return v;
}

CheckVerdict check_power_inequality(const OperatorQuantities& q, const ComplexMatrix& t, int n,
                                    double tol) {
  if (n < 1) throw InvalidArgumentError("power inequality needs n >= 1");
  const double bound = std::pow(q.radius.value, n);
  const double lhs = n == 1 ? q.radius.value : radius_of(power(t, n));
  CheckVerdict v = inequality(CheckId::PowerInequality, bound - lhs, scaled(tol, bound));
  v.power = n;
  v.parts = {lhs, bound};
  return v;
}

CheckVerdict check_normal_equality(const OperatorQuantities& q, const ComplexMatrix& t,
                                   double tol) {
  const ComplexMatrix ts = adjoint(t);
  const double commutator = frobenius_norm(t * ts - ts * t);
  CheckVerdict v;
  v.id = CheckId::NormalEquality;
  const double residual = q.radius.value - q.norm;
  v.slack = -std::abs(residual);
  v.threshold = scaled(tol, q.norm);
  v.hypothesis_slack = scaled(tol, q.norm * q.norm) - commutator;
  v.status = classify(v.slack, v.threshold, v.hypothesis_slack);
  v.parts = {residual, commutator};
  return v;
}

CheckVerdict check_norm_alpha_bound(const OperatorQuantities& q, double tol) {
  const double w = q.radius.value;
  const double lhs = q.norm * q.norm + std::max(q.alpha_t, q.alpha_tstar);
  const double rhs = 2.0 * w * w + q.dee;
  CheckVerdict v = inequality(CheckId::NormAlphaBound, rhs - lhs, scaled(tol, q.norm * q.norm));
  v.parts = {lhs, rhs};
  return v;
}

CheckVerdict check_refined_norm_chain(const OperatorQuantities& q, double tol) {
  const double w = q.radius.value;
  const double radicand = 2.0 * w * w - std::max(q.alpha_t, q.alpha_tstar) + q.dee;
  const double middle = std::sqrt(std::max(radicand, 0.0));
  const double first = middle - q.norm;
  const double second = 2.0 * w - middle;
  CheckVerdict v =
      inequality(CheckId::RefinedNormChain, std::min(first, second), scaled(tol, q.norm));
  v.parts = {first, second, middle};
  return v;
}

CheckVerdict check_defect_bound(const OperatorQuantities& q, double tol) {
  const double w2 = q.radius.value * q.radius.value;
  return inequality(CheckId::DefectBound, 2.0 * w2 - q.dee, scaled(tol, w2));
}

CheckVerdict check_sqrt2_norm_bound(const OperatorQuantities& q, double tol) {
  CheckVerdict v = inequality(CheckId::Sqrt2NormBound,
                              std::numbers::sqrt2 * q.radius.value - q.norm, scaled(tol, q.norm));
  v.informational = true;
  return v;
}

CheckVerdict check_conditional_sqrt2_bound(const OperatorQuantities& q, double tol) {
  CheckVerdict v;
  v.id = CheckId::ConditionalSqrt2Bound;
  const double inv_scale = q.sigma_min * q.sigma_min;
  v.hypothesis_slack = inv_scale - q.dee;
  v.slack = std::numbers::sqrt2 * q.radius.value - q.norm;
  v.threshold = scaled(tol, q.norm);
  v.status = q.invertible ? classify(v.slack, v.threshold, v.hypothesis_slack,
                                     scaled(tol, q.norm * q.norm))
                          : Status::Vacuous;
  v.parts = {inv_scale, q.dee};
  return v;
}

CheckVerdict check_norm_alpha_bound(const ComplexMatrix& t, double tol) {
  return check_norm_alpha_bound(measure(t), tol);
}

CheckVerdict check_refined_norm_chain(const ComplexMatrix& t, double tol) {
  return check_refined_norm_chain(measure(t), tol);
}

CheckVerdict check_defect_bound(const ComplexMatrix& t, double tol) {
  return check_defect_bound(measure(t), tol);
}

CheckVerdict check_conditional_sqrt2(const ComplexMatrix& r, const std::optional<ComplexMatrix>& s,
                                     double tol) {
  const OperatorQuantities qr = measure(r);
  if (!s) return check_conditional_sqrt2_bound(qr, tol);

  require_equal_square(r, *s, "conditional product bound");
  const OperatorQuantities qs = measure(*s);
  const double hyp_r = qr.sigma_min * qr.sigma_min - qr.dee;
  const double hyp_s = qs.sigma_min * qs.sigma_min - qs.dee;
  const double bound = 2.0 * qr.radius.value * qs.radius.value;
  const double lhs = radius_of(r * *s);

  CheckVerdict v;
  v.id = CheckId::ConditionalProductBound;
  v.hypothesis_slack = std::min(hyp_r, hyp_s);
  v.slack = bound - lhs;
  v.threshold = scaled(tol, bound);
  const double hyp_threshold = scaled(tol, std::max(qr.norm * qr.norm, qs.norm * qs.norm));
  v.status = qr.invertible && qs.invertible
                 ? classify(v.slack, v.threshold, v.hypothesis_slack, hyp_threshold)
                 : Status::Vacuous;
  v.parts = {hyp_r, hyp_s};
  return v;
}

namespace {

// Lazily computed quantities shared by the checks on one (R, S) pair, so each
// radius and norm is evaluated at most once per report.
class PairQuantities {
 public:
  PairQuantities(const ComplexMatrix& r, const ComplexMatrix& s) : r_(r), s_(s) {}

  const ComplexMatrix& r() const { return r_; }
  const ComplexMatrix& s() const { return s_; }

  double r_radius() { return cached(r_radius_, [&] { return radius_of(r_); }); }
  double s_radius() { return cached(s_radius_, [&] { return radius_of(s_); }); }
  double r_norm() { return cached(r_norm_, [&] { return operator_norm(r_); }); }
  double s_norm() { return cached(s_norm_, [&] { return operator_norm(s_); }); }
  double product_radius() { return cached(rs_radius_, [&] { return radius_of(r_ * s_); }); }
  double block_radius() { return cached(block_radius_, [&] { return radius_of(block()); }); }
  const ComplexMatrix& block() {
    if (!block_) block_ = off_diag_block(r_, s_);
    return *block_;
  }

 private:
  template <typename F>
  static double cached(std::optional<double>& slot, F compute) {
    if (!slot) slot = compute();
    return *slot;
  }

  const ComplexMatrix& r_;
  const ComplexMatrix& s_;
  std::optional<ComplexMatrix> block_;
  std::optional<double> r_radius_, s_radius_, r_norm_, s_norm_, rs_radius_, block_radius_;
};

CheckVerdict product_bound(PairQuantities& p, double tol) {
  const double bound = 4.0 * p.r_radius() * p.s_radius();
  return inequality(CheckId::ProductBound, bound - p.product_radius(), scaled(tol, bound));
}

CheckVerdict commuting_product_bound(PairQuantities& p, double tol) {
  const double commutator = operator_norm(p.r() * p.s() - p.s() * p.r());
  if (commutator > kCommutatorTolerance * p.r_norm() * p.s_norm()) {
    throw NotCommutingError("commuting product bound: operands are not commuting");
  }
  const double bound = 2.0 * p.r_radius() * p.s_radius();
  CheckVerdict v = inequality(CheckId::CommutingProductBound, bound - p.product_radius(),
                              scaled(tol, bound));
  v.parts = {commutator};
  return v;
}

CheckVerdict direct_sum_radius(PairQuantities& p, double tol) {
  const double expected = std::max(p.r_radius(), p.s_radius());
  return identity_check(CheckId::DirectSumRadius,
                        radius_of(direct_sum(p.r(), p.s())) - expected, scaled(tol, expected));
}

CheckVerdict block_norm_identity(PairQuantities& p, double tol) {
  const double expected = std::max(p.r_norm(), p.s_norm());
  const double diag = operator_norm(direct_sum(p.r(), p.s())) - expected;
  const double off = operator_norm(p.block()) - expected;
  CheckVerdict v = inequality(CheckId::BlockNormIdentity,
                              -std::max(std::abs(diag), std::abs(off)), scaled(tol, expected));
  v.parts = {diag, off};
  return v;
}

CheckVerdict off_diagonal_bounds(PairQuantities& p, int n, double tol) {
  if (n < 1 || n > 3) {
    throw InvalidArgumentError("off-diagonal radius bounds: n must be 1, 2 or 3");
  }
  const double half_sum = 0.5 * (p.r_norm() + p.s_norm());
  const double block = p.block_radius();
  const double rs = n == 1 ? p.product_radius() : radius_of(power(p.r() * p.s(), n));
  const double sr = radius_of(power(p.s() * p.r(), n));
  const double lower = std::pow(std::max(rs, sr), 1.0 / (2.0 * n));
  const double first = block - lower;
  const double second = half_sum - block;
  CheckVerdict v = inequality(CheckId::OffDiagonalRadiusBounds, std::min(first, second),
                              scaled(tol, 2.0 * half_sum));
  v.power = n;
  v.parts = {first, second, lower, block, half_sum};
  return v;
}

CheckVerdict off_diagonal_equality(PairQuantities& p, double tol) {
  const double norm_sum = p.r_norm() + p.s_norm();
  const double g = gee(p.block());
  const double residual = p.block_radius() - 0.5 * norm_sum;

  CheckVerdict v;
  v.id = CheckId::OffDiagonalEquality;
  v.hypothesis_slack = 2.0 * g - norm_sum * norm_sum;
  v.slack = -std::abs(residual);
  v.threshold = scaled(tol, norm_sum);
  v.status = classify(v.slack, v.threshold, v.hypothesis_slack, scaled(tol, norm_sum * norm_sum));
  v.parts = {residual, g};
  return v;
}

}  // namespace

CheckVerdict check_product_bound(const ComplexMatrix& r, const ComplexMatrix& s, double tol) {
  require_equal_square(r, s, "product bound");
  PairQuantities p(r, s);
  return product_bound(p, tol);
}

CheckVerdict check_commuting_product_bound(const ComplexMatrix& r, const ComplexMatrix& s,
                                           double tol) {
  require_equal_square(r, s, "commuting product bound");
  PairQuantities p(r, s);
  return commuting_product_bound(p, tol);
}

CheckVerdict check_direct_sum_radius(const ComplexMatrix& r, const ComplexMatrix& s, double tol) {
  require_equal_square(r, s, "direct sum radius");
  PairQuantities p(r, s);
  return direct_sum_radius(p, tol);
}

CheckVerdict check_block_norm_identity(const ComplexMatrix& r, const ComplexMatrix& s,
                                       double tol) {
  require_equal_square(r, s, "block norm identity");
  PairQuantities p(r, s);
  return block_norm_identity(p, tol);
}

CheckVerdict check_off_diagonal_bounds(const ComplexMatrix& r, const ComplexMatrix& s, int n,
                                       double tol) {
  require_equal_square(r, s, "off-diagonal radius bounds");
  PairQuantities p(r, s);
  return off_diagonal_bounds(p, n, tol);
}

CheckVerdict check_off_diagonal_equality(const ComplexMatrix& r, const ComplexMatrix& s,
                                         double tol) {
  PairQuantities p(r, s);
  p.block();  // validates conformability
  return off_diagonal_equality(p, tol);
}

CheckVerdict check_scalar_block_condition(Complex r, Complex s, double tol) {
  const double gap = std::abs(r) - std::abs(s);
  const double lhs = std::min(std::norm(r - std::conj(s)), std::norm(r + std::conj(s)));
  CheckVerdict v = inequality(CheckId::ScalarBlockCondition, gap * gap - lhs,
                              scaled(tol, std::norm(r) + std::norm(s)));
  // Only real scalars are claimed to satisfy the condition.
  v.informational = r.imag() != 0.0 || s.imag() != 0.0;
  v.parts = {lhs, gap * gap};
  return v;
}

BoundsReport bounds_report(const ComplexMatrix& t, double tol) {
  const OperatorQuantities q = measure(t);
  BoundsReport report;
  report.norm = q.norm;
  report.radius = q.radius.value;
  report.alpha_t = q.alpha_t;
  report.alpha_tstar = q.alpha_tstar;
  report.dee = q.dee;
  report.gee = q.gee;
  report.estimate = q.radius;
  report.checks = {
      check_norm_sandwich(q, tol),
      check_power_inequality(q, t, 2, tol),
      check_power_inequality(q, t, 3, tol),
      check_normal_equality(q, t, tol),
      check_norm_alpha_bound(q, tol),
      check_refined_norm_chain(q, tol),
      check_defect_bound(q, tol),
      check_sqrt2_norm_bound(q, tol),
      check_conditional_sqrt2_bound(q, tol),
  };
  return report;
}

bool is_scalar_matrix(const ComplexMatrix& a) {
  if (!a.is_square()) return false;
  const Complex c = a(0, 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != (i == j ? c : Complex{})) return false;
  return true;
}

PairReport pair_report(const ComplexMatrix& r, const ComplexMatrix& s, double tol,
                       const PairOptions& options) {
  PairQuantities p(r, s);
  p.block();

  PairReport report;
  report.r_norm = p.r_norm();
  report.s_norm = p.s_norm();
  report.half_norm_sum = 0.5 * (report.r_norm + report.s_norm);
  report.block_radius = p.block_radius();

  const CheckVerdict equality = off_diagonal_equality(p, tol);
  report.block_gee = equality.parts[1];
  report.checks.push_back(equality);

  if (is_scalar_matrix(r) && is_scalar_matrix(s)) {
    report.checks.push_back(check_scalar_block_condition(r(0, 0), s(0, 0), tol));
  }

  const bool square_pair = r.is_square() && s.is_square() && r.rows() == s.rows();
  if (square_pair) {
    for (int n : options.off_diagonal_powers) {
      report.checks.push_back(off_diagonal_bounds(p, n, tol));
    }
    if (options.background) {
      report.checks.push_back(product_bound(p, tol));
      report.checks.push_back(direct_sum_radius(p, tol));
      report.checks.push_back(block_norm_identity(p, tol));
      report.checks.push_back(check_conditional_sqrt2(r, s, tol));
    }
    if (options.commuting) {
      report.checks.push_back(commuting_product_bound(p, tol));
    }
  }
  return report;
}

}  // namespace numrad
