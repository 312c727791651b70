#include <doctest.h>

#include <cmath>
#include <numbers>

#include "numrad/bounds.hpp"
#include "numrad/ensemble.hpp"
#include "numrad/linalg.hpp"
#include "oracles.hpp"

using namespace numrad;

namespace {

const Complex kI{0.0, 1.0};
const ComplexMatrix kNil{{0.0, 1.0}, {0.0, 0.0}};
const ComplexMatrix kSwap{{0.0, 1.0}, {2.0, 0.0}};
const ComplexMatrix kCain{{0.01, 1.0}, {0.0, 0.01}};

const CheckVerdict& find(const std::vector<CheckVerdict>& checks, CheckId id, int power = 0) {
  for (const CheckVerdict& v : checks)
    if (v.id == id && v.power == power) return v;
  FAIL("missing check " << to_string(id));
  return checks.front();
}

ComplexMatrix scalar1(Complex c) { return ComplexMatrix{{c}}; }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("names round-trip") {
  for (int i = 0; i <= static_cast<int>(CheckId::ScalarBlockCondition); ++i) {
    const auto id = static_cast<CheckId>(i);
    CHECK(check_id_from_string(to_string(id)) == id);
  }
  CHECK(status_from_string("vacuous") == Status::Vacuous);
  CHECK_FALSE(check_id_from_string("nonsense").has_value());
}

TEST_CASE("dee and gee on fixed inputs") {
  CHECK(dee(ComplexMatrix::identity(3)) == doctest::Approx(0.0));
  CHECK(dee(kNil) == doctest::Approx(0.5));
  CHECK(dee(kSwap) == doctest::Approx(0.5));
  CHECK(gee(ComplexMatrix::identity(2)) == doctest::Approx(2.0));
  CHECK(gee(kSwap) == doctest::Approx(4.5));

  // Cartesian-part norms of the swap matrix from the 2x2 eigen formula.
  const CartesianPair parts = cartesian_parts(kSwap);
  const auto [l1, h1] = oracle::hermitian2x2(0.0, parts.t1(0, 1), 0.0);
  const auto [l2, h2] = oracle::hermitian2x2(0.0, parts.t2(0, 1), 0.0);
  CHECK(std::max(std::abs(l1), h1) == doctest::Approx(1.5));
  CHECK(std::max(std::abs(l2), h2) == doctest::Approx(0.5));
}

TEST_CASE("dee two ways and unitary invariance") {
  for (std::size_t i = 0; i < 100; ++i) {
    Xoshiro256 rng(sample_seed(51, i));
    const std::size_t n = 2 + i % 6;
    const ComplexMatrix t = ginibre(n, rng);
    const double d = dee(t);
    CHECK(d >= 0.0);
    CHECK(std::abs(d - dee_from_sums(t)) <= 1e-10 * std::max(1.0, d));
    const ComplexMatrix u = haar_like_unitary(n, rng);
    const ComplexMatrix c = adjoint(u) * t * u;
    CHECK(std::abs(dee(c) - d) <= 1e-8 * std::max(1.0, d));
    const double g = gee(t);
    CHECK(std::abs(gee(c) - g) <= 1e-8 * std::max(1.0, std::abs(g)));
  }
}

TEST_CASE("gee of an off-diagonal block") {
  for (std::size_t i = 0; i < 30; ++i) {
    Xoshiro256 rng(sample_seed(52, i));
    const std::size_t n = 2 + i % 3;
    const ComplexMatrix r = invertible_shifted(n, rng);
    const ComplexMatrix s = invertible_shifted(n, rng);
    const double nr = operator_norm(r), ns = operator_norm(s);
    const double ir = operator_norm(inverse(r)), is = operator_norm(inverse(s));
    const double m1 = operator_norm(r - adjoint(s)), m2 = operator_norm(r + adjoint(s));
    const double expected = std::max(nr * nr, ns * ns) + std::min(1.0 / (ir * ir), 1.0 / (is * is)) -
                            0.5 * std::min(m1 * m1, m2 * m2);
    CHECK(std::abs(gee(off_diag_block(r, s)) - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("main bound is tight on the analytic cases") {
  for (const ComplexMatrix& t : {ComplexMatrix::identity(2), kNil, kSwap}) {
    const CheckVerdict v = check_norm_alpha_bound(t, 1e-9);
    CHECK(v.status == Status::Holds);
    CHECK(std::abs(v.slack) <= 1e-9);
  }
}

TEST_CASE("refined chain") {
  const CheckVerdict id = check_refined_norm_chain(ComplexMatrix::identity(2));
  CHECK(id.status == Status::Holds);
  CHECK(id.parts[2] == doctest::Approx(1.0));  // middle term
  CHECK(id.parts[1] == doctest::Approx(1.0));

  const CheckVerdict nil = check_refined_norm_chain(kNil);
  CHECK(nil.status == Status::Holds);
  CHECK(std::abs(nil.parts[0]) <= 1e-12);
  CHECK(std::abs(nil.parts[1]) <= 1e-12);
  CHECK(nil.parts[2] == doctest::Approx(1.0));
}

TEST_CASE("defect bound") {
  CHECK(check_defect_bound(ComplexMatrix::identity(2)).slack == doctest::Approx(2.0));
  Xoshiro256 rng(53);
  const ComplexMatrix h = hermitian(4, rng);
  const CheckVerdict v = check_defect_bound(h);
  CHECK(std::abs(dee(h)) <= 1e-20);
  CHECK(v.slack == doctest::Approx(2.0 * std::pow(operator_norm(h), 2)));
}

TEST_CASE("reports for the analytic cases") {
  const BoundsReport id = bounds_report(ComplexMatrix::identity(3));
  CHECK(id.checks.size() == 9);
  for (const CheckVerdict& v : id.checks) CHECK(v.status == Status::Holds);
  CHECK(std::abs(find(id.checks, CheckId::NormAlphaBound).slack) <= 1e-9);

  const BoundsReport nil = bounds_report(kNil);
  CHECK(nil.radius == doctest::Approx(0.5));
  CHECK(nil.norm == doctest::Approx(1.0));
  CHECK(std::abs(find(nil.checks, CheckId::NormAlphaBound).slack) <= 1e-9);
  CHECK(std::abs(find(nil.checks, CheckId::NormSandwich).parts[0]) <= 1e-12);
  CHECK(find(nil.checks, CheckId::ConditionalSqrt2Bound).status == Status::Vacuous);
  CHECK(find(nil.checks, CheckId::NormalEquality).status == Status::Vacuous);
}

TEST_CASE("normal equality") {
  const Complex d[] = {1.0, kI};
  const BoundsReport r = bounds_report(ComplexMatrix::diagonal(d));
  const CheckVerdict& v = find(r.checks, CheckId::NormalEquality);
  CHECK(v.status == Status::Holds);
  CHECK(r.radius == doctest::Approx(1.0));
  CHECK(r.norm == doctest::Approx(1.0));
}

TEST_CASE("false sqrt2 bound and its conditional form") {
  const BoundsReport r = bounds_report(kCain);
  const CheckVerdict& plain = find(r.checks, CheckId::Sqrt2NormBound);
  CHECK(plain.slack < 0.0);
  CHECK(plain.status == Status::Violation);
  CHECK(plain.informational);
  CHECK_FALSE(plain.is_failure());

  const CheckVerdict cond = check_conditional_sqrt2(kCain, std::nullopt);
  CHECK(cond.status == Status::Vacuous);
  REQUIRE(cond.hypothesis_slack.has_value());
  // sigma_min is about 1e-4 and D = 1/2.
  CHECK(*cond.hypothesis_slack == doctest::Approx(1e-8 - 0.5).epsilon(1e-3));
  CHECK(cond.slack < 0.0);

  const CheckVerdict id = check_conditional_sqrt2(ComplexMatrix::identity(2), std::nullopt);
  CHECK(id.status == Status::Holds);
  CHECK(*id.hypothesis_slack == doctest::Approx(1.0));

  const Complex d[] = {1.0, -1.0};
  const ComplexMatrix flip = ComplexMatrix::diagonal(d);
  const CheckVerdict prod = check_conditional_sqrt2(flip, flip);
  CHECK(prod.id == CheckId::ConditionalProductBound);
  CHECK(prod.status == Status::Holds);
  CHECK(prod.slack == doctest::Approx(1.0));

  CHECK(check_conditional_sqrt2(kNil, std::nullopt).status == Status::Vacuous);
}

TEST_CASE("scalar block condition") {
  const CheckVerdict same = check_scalar_block_condition(1.0, 2.0);
  CHECK(same.status == Status::Holds);
  CHECK(std::abs(same.slack) <= 1e-15);
  const CheckVerdict opposite = check_scalar_block_condition(1.0, -2.0);
  CHECK(opposite.status == Status::Holds);
  CHECK(std::abs(opposite.slack) <= 1e-15);
  const CheckVerdict complex = check_scalar_block_condition(1.0, kI);
  CHECK(complex.slack == doctest::Approx(-2.0));
  CHECK(complex.status == Status::Violation);
  CHECK(complex.informational);

  for (std::size_t i = 0; i < 200; ++i) {
    Xoshiro256 rng(sample_seed(54, i));
    CHECK(check_scalar_block_condition(rng.normal(), rng.normal()).slack >= -1e-12);
  }
}

TEST_CASE("off-diagonal equality") {
  const CheckVerdict v12 = check_off_diagonal_equality(scalar1(1.0), scalar1(2.0));
  CHECK(v12.status == Status::Holds);
  CHECK(std::abs(*v12.hypothesis_slack) <= 1e-9);
  CHECK(v12.parts[1] == doctest::Approx(4.5));

  const CheckVerdict vi = check_off_diagonal_equality(scalar1(1.0), scalar1(kI));
  CHECK(vi.status == Status::Vacuous);
  CHECK(*vi.hypothesis_slack < 0.0);
  CHECK(std::abs(vi.parts[0]) <= 1e-9);  // w = 1 all the same

  const CheckVerdict zero = check_off_diagonal_equality(scalar1(0.0), scalar1(0.0));
  CHECK(zero.status == Status::Holds);
  CHECK(zero.slack == 0.0);

  CHECK_THROWS_AS(check_off_diagonal_equality(ComplexMatrix(2, 2), ComplexMatrix(3, 3)),
                  DimensionError);
}

TEST_CASE("off-diagonal radius bounds") {
  const CheckVerdict v = check_off_diagonal_bounds(scalar1(1.0), scalar1(2.0), 1);
  CHECK(v.status == Status::Holds);
  CHECK(v.parts[2] == doctest::Approx(std::numbers::sqrt2));
  CHECK(v.parts[3] == doctest::Approx(1.5));
  CHECK(v.parts[4] == doctest::Approx(1.5));

  const ComplexMatrix id = ComplexMatrix::identity(2);
  const CheckVerdict ii = check_off_diagonal_bounds(id, id, 2);
  CHECK(ii.status == Status::Holds);
  CHECK(std::abs(ii.parts[0]) <= 1e-12);
  CHECK(std::abs(ii.parts[1]) <= 1e-12);

  for (std::size_t i = 0; i < 30; ++i) {
    Xoshiro256 rng(sample_seed(55, i));
    const ComplexMatrix r = ginibre(3, rng);
    const ComplexMatrix s = ginibre(3, rng);
    const CheckVerdict w = check_off_diagonal_bounds(r, s, 2);
    CHECK(w.status == Status::Holds);
  }
  CHECK_THROWS_AS(check_off_diagonal_bounds(id, id, 4), InvalidArgumentError);
  CHECK_THROWS_AS(check_off_diagonal_bounds(id, ComplexMatrix::identity(3), 1), DimensionError);
}

TEST_CASE("pair checks") {
  for (std::size_t i = 0; i < 30; ++i) {
    Xoshiro256 rng(sample_seed(56, i));
    const ComplexMatrix t = ginibre(3, rng);
    const ComplexMatrix t2 = t * t;
    const CheckVerdict comm = check_commuting_product_bound(t, t2);
    CHECK(comm.status == Status::Holds);
    const ComplexMatrix s = ginibre(3, rng);
    CHECK(check_product_bound(t, s).status == Status::Holds);
    CHECK(check_direct_sum_radius(t, s).status == Status::Holds);
    CHECK(check_block_norm_identity(t, s).status == Status::Holds);
  }
  const ComplexMatrix a{{0.0, 1.0}, {0.0, 0.0}};
  const ComplexMatrix b{{0.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(check_commuting_product_bound(a, b), NotCommutingError);
}

TEST_CASE("pair report composition") {
  const PairReport scalars = pair_report(scalar1(1.0), scalar1(2.0));
  CHECK(scalars.block_radius == doctest::Approx(1.5));
  CHECK(scalars.half_norm_sum == doctest::Approx(1.5));
  CHECK(find(scalars.checks, CheckId::OffDiagonalEquality).status == Status::Holds);
  CHECK(find(scalars.checks, CheckId::ScalarBlockCondition).status == Status::Holds);
  for (int n : {1, 2, 3})
    CHECK(find(scalars.checks, CheckId::OffDiagonalRadiusBounds, n).status == Status::Holds);

  PairOptions only;
  only.background = false;
  only.off_diagonal_powers = {2};
  const PairReport narrow = pair_report(scalar1(1.0), scalar1(kI), 1e-9, only);
  CHECK(narrow.checks.size() == 3);
  CHECK(narrow.block_radius == doctest::Approx(1.0));

  const PairReport rect = pair_report(ComplexMatrix{{1.0, 2.0}}, ComplexMatrix{{3.0}, {4.0}});
  CHECK(rect.checks.size() == 1);
}

TEST_CASE("no verdict pairs a satisfied hypothesis with a failed conclusion") {
  for (std::size_t i = 0; i < 200; ++i) {
    Xoshiro256 rng(sample_seed(57, i));
    const std::size_t n = 2 + i % 4;
    const ComplexMatrix t = (i % 2) ? ginibre(n, rng) : invertible_shifted(n, rng);
    const BoundsReport report = bounds_report(t);
    for (const CheckVerdict& v : report.checks) {
      if (v.informational) continue;
      CHECK_MESSAGE(v.status != Status::Violation, to_string(v.id));
    }
    CHECK(report.norm >= report.radius - 1e-9);
    CHECK(report.radius >= report.norm / 2.0 - 1e-9);
    CHECK(report.dee >= 0.0);
    CHECK(report.alpha_t >= 0.0);
    CHECK(report.alpha_tstar >= 0.0);
  }
}

}  // TEST_SUITE
