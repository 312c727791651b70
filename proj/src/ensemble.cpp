#include "numrad/ensemble.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "numrad/linalg.hpp"
#include "numrad/parallel.hpp"
#include "numrad/radius.hpp"

namespace numrad {
namespace {

constexpr std::array<std::pair<EnsembleKind, std::string_view>, 9> kKindNames{{
    {EnsembleKind::Ginibre, "ginibre"},
    {EnsembleKind::Hermitian, "hermitian"},
    {EnsembleKind::Normal, "normal"},
    {EnsembleKind::Unitary, "unitary"},
    {EnsembleKind::NilpotentPerturbed, "nilpotent_perturbed"},
    {EnsembleKind::InvertibleShifted, "invertible_shifted"},
    {EnsembleKind::OffDiagPair, "off_diag_pair"},
    {EnsembleKind::ScalarPair, "scalar_pair"},
    {EnsembleKind::CommutingPolyPair, "commuting_poly_pair"},
}};

constexpr double kMinSigma = 1e-3;

// Horner evaluation of sum_k coeffs[k] T^k.
ComplexMatrix polynomial(const ComplexMatrix& t, const std::vector<Complex>& coeffs) {
  ComplexMatrix acc = ComplexMatrix::scalar(t.rows(), coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    acc = acc * t + ComplexMatrix::scalar(t.rows(), coeffs[k]);
  }
  return acc;
}

std::vector<Complex> random_polynomial(Xoshiro256& rng) {
  const std::size_t degree = 1 + static_cast<std::size_t>(rng() % 3);
  std::vector<Complex> coeffs(degree + 1);
  for (Complex& c : coeffs) c = rng.complex_normal();
  return coeffs;
}

std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
  for (int byte = 0; byte < 8; ++byte) {
    hash ^= (word >> (8 * byte)) & 0xFFu;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

std::uint64_t digest_matrix(std::uint64_t hash, const ComplexMatrix& m) {
  hash = fnv1a(hash, m.rows());
  hash = fnv1a(hash, m.cols());
  for (const Complex& z : m.entries()) {
    hash = fnv1a(hash, std::bit_cast<std::uint64_t>(z.real()));
    hash = fnv1a(hash, std::bit_cast<std::uint64_t>(z.imag()));
  }
  return hash;
}

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  for (const auto& [key, name] : kKindNames)
    if (key == kind) return name;
  return "unknown";
}

std::optional<EnsembleKind> ensemble_kind_from_string(std::string_view name) {
  for (const auto& [key, text] : kKindNames)
    if (text == name) return key;
  return std::nullopt;
}

bool is_pair_kind(EnsembleKind kind) {
  return kind == EnsembleKind::OffDiagPair || kind == EnsembleKind::ScalarPair ||
         kind == EnsembleKind::CommutingPolyPair;
}

void EnsembleSpec::validate() const {
  if (dim < 1 || dim > kMaxEnsembleDimension) {
    throw InvalidArgumentError("ensemble dimension must be in 1.." +
                               std::to_string(kMaxEnsembleDimension));
  }
  if (count < 1) throw InvalidArgumentError("ensemble count must be positive");
  if (kind == EnsembleKind::NilpotentPerturbed && !(epsilon > 0.0 && std::isfinite(epsilon))) {
    throw InvalidArgumentError("nilpotent_perturbed needs a positive finite epsilon");
  }
}

ComplexMatrix ginibre(std::size_t n, Xoshiro256& rng) {
  ComplexMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

ComplexMatrix hermitian(std::size_t n, Xoshiro256& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (g(i, j) + std::conj(g(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

ComplexMatrix haar_like_unitary(std::size_t n, Xoshiro256& rng) {
  ComplexMatrix q = ginibre(n, rng);
  // Modified Gram-Schmidt on the columns, applied twice for orthogonality to rounding.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
      norm = std::sqrt(norm);
      for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
  }
  return q;
}

ComplexMatrix normal_matrix(std::size_t n, Xoshiro256& rng) {
  const ComplexMatrix u = haar_like_unitary(n, rng);
  std::vector<Complex> diag(n);
  for (Complex& z : diag) z = rng.complex_normal();
  return u * ComplexMatrix::diagonal(diag) * adjoint(u);
}

ComplexMatrix nilpotent_perturbed(std::size_t n, double epsilon, Xoshiro256& rng) {
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = epsilon;
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = rng.complex_normal();
  }
  return a;
}

ComplexMatrix invertible_shifted(std::size_t n, Xoshiro256& rng) {
  const ComplexMatrix g = ginibre(n, rng);
  const std::vector<double> sv = singular_values(g);
  if (sv.back() >= kMinSigma) return g;
  // sigma_min(G + cI) >= |c| - |G|, so the fallback shift always clears the deficit.
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Complex z = rng.complex_normal();
    const double magnitude = kMinSigma + std::abs(z);
    const Complex shift = std::abs(z) == 0.0 ? Complex{magnitude} : magnitude * z / std::abs(z);
    ComplexMatrix shifted = g + ComplexMatrix::scalar(n, shift);
    if (singular_values(shifted).back() >= kMinSigma) return shifted;
  }
  return g + ComplexMatrix::scalar(n, kMinSigma + sv.front() + kMinSigma);
}

Sample generate(const EnsembleSpec& spec, std::size_t index) {
  spec.validate();
  if (index >= spec.count) {
    throw InvalidArgumentError("sample index " + std::to_string(index) + " is outside count " +
                               std::to_string(spec.count));
  }
  Xoshiro256 rng(sample_seed(spec.seed, index));
  const std::size_t n = spec.dim;
  switch (spec.kind) {
    case EnsembleKind::Ginibre:
      return {ginibre(n, rng), std::nullopt};
    case EnsembleKind::Hermitian:
      return {hermitian(n, rng), std::nullopt};
    case EnsembleKind::Normal:
      return {normal_matrix(n, rng), std::nullopt};
    case EnsembleKind::Unitary:
      return {haar_like_unitary(n, rng), std::nullopt};
    case EnsembleKind::NilpotentPerturbed:
      return {nilpotent_perturbed(n, spec.epsilon, rng), std::nullopt};
    case EnsembleKind::InvertibleShifted:
      return {invertible_shifted(n, rng), std::nullopt};
    case EnsembleKind::OffDiagPair: {
      ComplexMatrix r = ginibre(n, rng);
      ComplexMatrix s = ginibre(n, rng);
      return {std::move(r), std::move(s)};
    }
    case EnsembleKind::ScalarPair: {
      const Complex r = spec.real_scalars ? Complex{rng.normal()} : rng.complex_normal();
      const Complex s = spec.real_scalars ? Complex{rng.normal()} : rng.complex_normal();
      return {ComplexMatrix::scalar(n, r), ComplexMatrix::scalar(n, s)};
    }
    case EnsembleKind::CommutingPolyPair: {
      const ComplexMatrix t = ginibre(n, rng);
      const std::vector<Complex> p = random_polynomial(rng);
      const std::vector<Complex> q = random_polynomial(rng);
      return {polynomial(t, p), polynomial(t, q)};
    }
  }
  throw InvalidArgumentError("unknown ensemble kind");
}

std::string matrix_digest(const Sample& sample) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  hash = digest_matrix(hash, sample.first);
  if (sample.second) hash = digest_matrix(hash, *sample.second);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string check_key(const CheckVerdict& verdict) {
  std::string key(to_string(verdict.id));
  if (verdict.power > 0) key += "_n" + std::to_string(verdict.power);
  return key;
}

std::vector<CheckVerdict> verify_sample(EnsembleKind kind, const Sample& sample, double tol) {
  if (!is_pair_kind(kind)) return bounds_report(sample.first, tol).checks;
  if (!sample.second) throw InvalidArgumentError("pair ensemble sample without a second block");
  PairOptions options;
  options.commuting = kind == EnsembleKind::CommutingPolyPair;
  return pair_report(sample.first, *sample.second, tol, options).checks;
}

SuiteSummary run_suite(const EnsembleSpec& spec, double tol, std::size_t workers) {
  spec.validate();
  if (!(tol > 0.0)) throw InvalidArgumentError("tolerance must be positive");
  if (workers == 0) workers = configured_workers();

  SuiteSummary summary;
  summary.spec = spec;
  summary.tolerance = tol;
  summary.records.resize(spec.count);
  parallel_chunks(spec.count, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Sample sample = generate(spec, i);
      VerificationRecord& record = summary.records[i];
      record.sample_index = i;
      record.digest = matrix_digest(sample);
      record.checks = verify_sample(spec.kind, sample, tol);
    }
  });

  for (const VerificationRecord& record : summary.records) {
    for (const CheckVerdict& v : record.checks) {
      const std::string key = check_key(v);
      auto [it, inserted] = summary.tallies.try_emplace(key);
      CheckTally& tally = it->second;
      if (inserted || v.slack < tally.min_slack) tally.min_slack = v.slack;
      tally.informational = v.informational;
      switch (v.status) {
        case Status::Holds:
          ++tally.holds;
          break;
        case Status::Vacuous:
          ++tally.vacuous;
          break;
        case Status::Violation:
          ++tally.violation;
          break;
      }
      if (v.is_failure()) {
        ++summary.failures;
        if (!summary.first_failure) {
          summary.first_failure = SuiteFailure{record.sample_index, key,
                                               generate(spec, record.sample_index)};
        }
      }
    }
  }
  return summary;
}

std::map<std::string, SlackStatistics> slack_statistics(
    const std::vector<VerificationRecord>& records) {
  if (records.empty()) throw InvalidArgumentError("slack_statistics: no records");
  std::map<std::string, std::vector<double>> slacks;
  for (const VerificationRecord& record : records)
    for (const CheckVerdict& v : record.checks) slacks[check_key(v)].push_back(v.slack);

  std::map<std::string, SlackStatistics> stats;
  for (const auto& [key, values] : slacks) {
    SlackStatistics s;
    s.count = values.size();
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    s.histogram.lo = s.min;
    s.histogram.hi = s.max;
    s.histogram.counts.assign(kHistogramBins, 0);
    const double width = s.max - s.min;
    for (double v : values) {
      std::size_t bin = 0;
      if (width > 0.0) {
        const double pos = (v - s.min) / width * static_cast<double>(kHistogramBins);
        bin = std::min(kHistogramBins - 1, static_cast<std::size_t>(pos));
      }
      ++s.histogram.counts[bin];
    }
    stats.emplace(key, std::move(s));
  }
  return stats;
}

CounterexampleReport search_sqrt2_counterexample(std::size_t dim, std::size_t budget,
                                                 std::uint64_t seed, SearchMode mode) {
  if (budget < 1) throw InvalidArgumentError("counterexample search needs a budget of at least 1");
  if (dim < 1 || dim > kMaxEnsembleDimension) {
    throw InvalidArgumentError("counterexample search dimension must be in 1.." +
                               std::to_string(kMaxEnsembleDimension));
  }
  CounterexampleReport report;
  for (std::size_t i = 0; i < budget; ++i) {
    report.samples_tried = i + 1;
    Xoshiro256 rng(sample_seed(seed, i));
    ComplexMatrix a = [&] {
      if (mode == SearchMode::HermitianOnly) return hermitian(dim, rng);
      if (i % 2 == 0) {
        const double epsilon = std::pow(10.0, -4.0 + 3.0 * rng.uniform());
        return nilpotent_perturbed(dim, epsilon, rng);
      }
      return ginibre(dim, rng);
    }();

    const std::vector<double> sv = singular_values(a);
    if (!(sv.back() > kInvertibilityThreshold * sv.front())) continue;
    const double norm = sv.front();
    const double radius = numerical_radius(a).value;
    if (!(norm > std::numbers::sqrt2 * radius * (1.0 + 1e-9))) continue;

    const double inv_scale = operator_norm(inverse(a));
    const double inv_norm_sq_recip = 1.0 / (inv_scale * inv_scale);
    const double d = dee(a);
    if (!(d > inv_norm_sq_recip)) {
      throw Error(
          "sqrt2 counterexample satisfies D(A) <= |A^-1|^-2, contradicting the conditional "
          "sqrt2 bound: implementation bug");
    }
    report.found = true;
    report.matrix = std::move(a);
    report.norm = norm;
    report.radius = radius;
    report.dee = d;
    report.inv_norm_sq_recip = inv_norm_sq_recip;
    report.sample_index = i;
    return report;
  }
  return report;
}

}  // namespace numrad
