// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails. The optional argument is the path of the numrad
// executable, used for the cross-process determinism check.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "numrad/bounds.hpp"
#include "numrad/cli.hpp"
#include "numrad/ensemble.hpp"
#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"
#include "numrad/serialize.hpp"
#include "oracles.hpp"

using namespace numrad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr std::array kAllKinds = {
    EnsembleKind::Ginibre,           EnsembleKind::Hermitian,   EnsembleKind::Normal,
    EnsembleKind::Unitary,           EnsembleKind::NilpotentPerturbed,
    EnsembleKind::InvertibleShifted, EnsembleKind::OffDiagPair, EnsembleKind::ScalarPair,
    EnsembleKind::CommutingPolyPair,
};

Sample draw(EnsembleKind kind, std::size_t dim, std::uint64_t seed, std::size_t index,
            std::size_t count) {
  EnsembleSpec spec;
  spec.kind = kind;
  spec.dim = dim;
  spec.seed = seed;
  spec.count = count;
  return generate(spec, index);
}

// The single operator a sample contributes: the matrix itself, or the
// off-diagonal block built from a pair.
ComplexMatrix operator_of(const Sample& s) {
  return s.second ? off_diag_block(s.first, *s.second) : s.first;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  constexpr std::array kinds = {EnsembleKind::Ginibre, EnsembleKind::Normal,
                                EnsembleKind::NilpotentPerturbed};
  double worst = 0.0;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t dim = 2 + (i / 3) % 7;
    const ComplexMatrix t = draw(kinds[i % 3], dim, 1001, i, 200).first;
    const double w = numerical_radius(t).value;
    const double g = numerical_radius_gridsearch(t, std::size_t{1} << 17);
    const double rel = std::abs(w - g) / std::max(1.0, w);
    worst = std::max(worst, rel);
    if (rel > 1e-7) ++bad;
  }
  const double elapsed = seconds_since(start);
  return {bad == 0 && elapsed <= 60.0,
          "200 matrices, worst |w - grid|/max(1,w) = " + fmt(worst) + " (limit 1e-7), " +
              fmt(elapsed) + " s (limit 60 s)"};
}

struct MainBoundSweep {
  std::size_t samples = 0;
  std::size_t main_violations = 0;
  std::size_t chain_violations = 0;
  std::size_t defect_violations = 0;
  double main_min = 1e300;
  double chain_min = 1e300;
  double defect_min = 1e300;
};

MainBoundSweep sweep_main_bounds() {
  MainBoundSweep r;
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < 10000; ++i) {
    const EnsembleKind kind = kAllKinds[i % kAllKinds.size()];
    const std::size_t dim = 2 + (i / kAllKinds.size()) % 5;
    const ComplexMatrix t = operator_of(draw(kind, dim, 2002, i, 10000));
    const OperatorQuantities q = measure(t);
    const CheckVerdict main = check_norm_alpha_bound(q, tol);
    const CheckVerdict chain = check_refined_norm_chain(q, tol);
    const CheckVerdict defect = check_defect_bound(q, tol);
    r.main_violations += main.status == Status::Violation;
    r.chain_violations += chain.status == Status::Violation;
    r.defect_violations += defect.status == Status::Violation;
    r.main_min = std::min(r.main_min, main.slack / std::max(1.0, q.norm * q.norm));
    r.chain_min = std::min(r.chain_min, chain.slack / std::max(1.0, q.norm));
    r.defect_min = std::min(r.defect_min, defect.slack / std::max(1.0, q.radius.value * q.radius.value));
    ++r.samples;
  }
  return r;
}

Outcome main_bound(const MainBoundSweep& sweep) {
  const ComplexMatrix cases[] = {ComplexMatrix::identity(2), ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}},
                                 ComplexMatrix{{0.0, 1.0}, {2.0, 0.0}}};
  double worst_equality = 0.0;
  for (const ComplexMatrix& t : cases) {
    // Every term from the independent oracles.
    const double norm = oracle::norm(t);
    const double a = std::pow(oracle::smallest_singular(t), 2);
    const double a_star = std::pow(oracle::smallest_singular(adjoint(t)), 2);
    const CartesianPair parts = cartesian_parts(t);
    const double d = 2.0 * std::min(std::pow(oracle::norm(parts.t1), 2), std::pow(oracle::norm(parts.t2), 2));
    const double w = oracle::radius2x2(t);
    const double oracle_slack = 2.0 * w * w + d - norm * norm - std::max(a, a_star);
    const CheckVerdict v = check_norm_alpha_bound(t, 1e-9);
    worst_equality = std::max({worst_equality, std::abs(v.slack), std::abs(oracle_slack)});
  }
  return {sweep.main_violations == 0 && worst_equality <= 1e-9,
          std::to_string(sweep.samples) + " samples, " + std::to_string(sweep.main_violations) +
              " violations (min scaled slack " + fmt(sweep.main_min) +
              "); analytic equality cases max |slack| = " + fmt(worst_equality) + " (limit 1e-9)"};
}

Outcome chain_and_defect(const MainBoundSweep& sweep) {
  const ComplexMatrix nil{{0.0, 1.0}, {0.0, 0.0}};
  const CheckVerdict chain = check_refined_norm_chain(nil, 1e-9);
  const double links = std::max(std::abs(chain.parts[0]), std::abs(chain.parts[1]));
  // Oracle for the nilpotent: |T| = 1, w = 1/2, alpha = 0, D = 1/2, so both links are 1 <= 1 <= 1.
  const double expected_middle = std::sqrt(2.0 * 0.25 - 0.0 + 0.5);
  const bool ok = sweep.chain_violations == 0 && sweep.defect_violations == 0 && links <= 1e-9 &&
                  std::abs(chain.parts[2] - expected_middle) <= 1e-9;
  return {ok, std::to_string(sweep.samples) + " samples, chain violations " +
                  std::to_string(sweep.chain_violations) + ", defect violations " +
                  std::to_string(sweep.defect_violations) + "; nilpotent links |slack| = " +
                  fmt(links)};
}

Outcome background_inequalities() {
  constexpr double tol = 1e-8;
  std::map<std::string, std::size_t> violations;
  std::map<std::string, std::size_t> counts;
  auto tally = [&](const CheckVerdict& v) {
    const std::string key = check_key(v);
    ++counts[key];
    if (v.status == Status::Violation) ++violations[key];
  };

  for (std::size_t i = 0; i < 1000; ++i) {
    constexpr std::array single = {EnsembleKind::Ginibre, EnsembleKind::Hermitian,
                                   EnsembleKind::Normal, EnsembleKind::Unitary,
                                   EnsembleKind::NilpotentPerturbed,
                                   EnsembleKind::InvertibleShifted};
    const std::size_t dim = 2 + (i / single.size()) % 5;
    const ComplexMatrix t = draw(single[i % single.size()], dim, 4004, i, 1000).first;
    const OperatorQuantities q = measure(t);
    tally(check_norm_sandwich(q, tol));
    tally(check_power_inequality(q, t, 2, tol));
    tally(check_power_inequality(q, t, 3, tol));
  }
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t dim = 2 + i % 5;
    const Sample pair = draw(EnsembleKind::OffDiagPair, dim, 4005, i, 1000);
    for (const CheckVerdict& v : pair_report(pair.first, *pair.second, tol).checks) tally(v);
  }
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t dim = 2 + i % 5;
    const Sample pair = draw(EnsembleKind::CommutingPolyPair, dim, 4006, i, 1000);
    tally(check_commuting_product_bound(pair.first, *pair.second, tol));
  }

  const char* required[] = {"norm_sandwich",
                            "power_inequality_n2",
                            "power_inequality_n3",
                            "product_bound",
                            "commuting_product_bound",
                            "direct_sum_radius",
                            "block_norm_identity",
                            "off_diagonal_radius_bounds_n1",
                            "off_diagonal_radius_bounds_n2",
                            "off_diagonal_radius_bounds_n3"};
  bool ok = true;
  std::ostringstream detail;
  std::size_t total = 0;
  for (const char* key : required) {
    const std::size_t n = counts[key];
    const std::size_t bad = violations[key];
    total += bad;
    if (n < 1000 || bad > 0) {
      ok = false;
      detail << key << ": " << bad << "/" << n << " violations; ";
    }
  }
  detail << std::size(required) << " inequality families x 1000 samples, " << total
         << " violations at tol 1e-8";
  return {ok, detail.str()};
}

Outcome scalar_equality() {
  std::size_t holds = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t dim = 1 + i % 4;
    const Sample pair = draw(EnsembleKind::ScalarPair, dim, 5005, i, 100);
    const double r = pair.first(0, 0).real();
    const double s = pair.second->operator()(0, 0).real();
    const double w = numerical_radius(off_diag_block(pair.first, *pair.second)).value;
    worst = std::max(worst, std::abs(w - 0.5 * (std::abs(r) + std::abs(s))));
    holds += check_off_diagonal_equality(pair.first, *pair.second, 1e-9).status == Status::Holds;
  }
  return {worst <= 1e-9 && holds == 100,
          "100 real scalar pairs, max |w - (|r|+|s|)/2| = " + fmt(worst) +
              " (limit 1e-9), equality check holds on " + std::to_string(holds) + "/100"};
}

Outcome cain_counterexample() {
  const auto start = Clock::now();
  cli::CainArgs args;
  args.dim = 2;
  args.budget = 10000;
  std::ostringstream out, err;
  const int code = cli::cmd_cain(args, out, err);
  const double elapsed = seconds_since(start);
  if (code != cli::kExitOk) return {false, "cain exited with " + std::to_string(code) + ": " + err.str()};

  const Json doc = Json::parse(out.str());
  const Json& report = doc["report"];
  if (!report["found"].get<bool>()) return {false, "no counterexample within the budget"};
  const ComplexMatrix a = matrix_from_json(report["matrix"]);
  // Independent re-derivation of every reported quantity.
  const double norm = oracle::norm(a);
  const double w = oracle::radius2x2(a);
  const double inv_sq = std::pow(oracle::smallest_singular(a), 2);
  const CartesianPair parts = cartesian_parts(a);
  const double d = 2.0 * std::min(std::pow(oracle::norm(parts.t1), 2), std::pow(oracle::norm(parts.t2), 2));
  const bool violates = norm > std::numbers::sqrt2 * w * (1.0 + 1e-9) &&
                        report["norm"].get<double>() >
                            std::numbers::sqrt2 * report["radius"].get<double>() * (1.0 + 1e-9);
  const bool consistent = d > inv_sq && report["dee"].get<double>() > report["inv_norm_sq_recip"].get<double>();
  return {violates && consistent && elapsed <= 30.0 && doc["seed"] == kDefaultCounterexampleSeed,
          "seed " + std::to_string(kDefaultCounterexampleSeed) + ", found after " +
              std::to_string(report["samples_tried"].get<std::size_t>()) + " samples: |A|/w(A) = " +
              fmt(norm / w) + ", D(A) = " + fmt(d) + " > |A^-1|^-2 = " + fmt(inv_sq) + ", " +
              fmt(elapsed) + " s (limit 30 s)"};
}

Outcome alpha_identities() {
  double worst_sym = 0.0;
  double worst_inv = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const ComplexMatrix t = draw(EnsembleKind::Ginibre, 2 + i % 7, 7007, i, 100).first;
    const double a = alpha(t);
    const double b = alpha(adjoint(t));
    worst_sym = std::max(worst_sym, std::abs(a - b) / a);
  }
  for (std::size_t i = 0; i < 100; ++i) {
    const ComplexMatrix r = draw(EnsembleKind::InvertibleShifted, 2 + i % 7, 7008, i, 100).first;
    const double a = alpha(r);
    const double inv = operator_norm(inverse(r));
    worst_inv = std::max(worst_inv, std::abs(a - 1.0 / (inv * inv)) / a);
  }
  return {worst_sym <= 1e-10 && worst_inv <= 1e-8,
          "alpha(T) vs alpha(T*) worst relative " + fmt(worst_sym) +
              " (limit 1e-10); alpha(R) vs |R^-1|^-2 worst relative " + fmt(worst_inv) +
              " (limit 1e-8)"};
}

Outcome parallelogram() {
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    Xoshiro256 rng(sample_seed(8008, i));
    const std::size_t n = 2 + i % 31;
    Vector a(n), b(n), diff(n), sum(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = rng.complex_normal();
      b[k] = rng.complex_normal();
      diff[k] = a[k] - b[k];
      sum[k] = a[k] + b[k];
    }
    const double na = std::pow(vector_norm(a), 2);
    const double nb = std::pow(vector_norm(b), 2);
    const double residual =
        na + nb - 0.5 * (std::pow(vector_norm(diff), 2) + std::pow(vector_norm(sum), 2));
    worst = std::max(worst, std::abs(residual) / (na + nb));
  }
  return {worst <= 1e-12, "1000 vector pairs, dims 2-32, worst relative residual " + fmt(worst) +
                              " (limit 1e-12)"};
}

std::string capture(const std::string& command) {
  std::string result;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.append(buf.data(), n);
  ::pclose(pipe);
  return result;
}

Outcome determinism(const std::string& executable) {
  cli::EnsembleArgs args;
  args.kind = "off_diag_pair";
  args.dim = 3;
  args.count = 200;
  args.seed = 42;
  args.records = true;
  std::ostringstream first, second, err;
  cli::cmd_ensemble(args, first, err);
  cli::cmd_ensemble(args, second, err);
  const bool repeat = !first.str().empty() && first.str() == second.str();
  if (executable.empty()) {
    return {false, "in-process repeat " + std::string(repeat ? "identical" : "differs") +
                       "; executable path not supplied for the thread-count comparison"};
  }
  const std::string flags = " ensemble --kind off_diag_pair --dim 3 --count 200 --seed 42 --records 2>/dev/null";
  const std::string one = capture("NUMRAD_THREADS=1 '" + executable + "'" + flags);
  const std::string eight = capture("NUMRAD_THREADS=8 '" + executable + "'" + flags);
  const bool threads = !one.empty() && one == eight && one == first.str();
  return {repeat && threads, std::string("repeat run ") + (repeat ? "byte-identical" : "differs") +
                                 "; NUMRAD_THREADS=1 vs 8 " +
                                 (threads ? "byte-identical" : "differs") + " (" +
                                 std::to_string(one.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string executable = argc > 1 ? argv[1] : "";
  int failures = 0;
  auto report = [&](int id, const char* title, const Outcome& o) {
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << title << ": " << o.detail
              << std::endl;
    failures += !o.pass;
  };

  report(1, "oracle equivalence", oracle_equivalence());
  const MainBoundSweep sweep = sweep_main_bounds();
  report(2, "main norm-alpha bound", main_bound(sweep));
  report(3, "refined chain and defect bound", chain_and_defect(sweep));
  report(4, "background inequalities", background_inequalities());
  report(5, "off-diagonal equality for real scalars", scalar_equality());
  report(6, "sqrt2 counterexample search", cain_counterexample());
  report(7, "alpha identities", alpha_identities());
  report(8, "parallelogram identity", parallelogram());
  report(9, "determinism", determinism(executable));

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
