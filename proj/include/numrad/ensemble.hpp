#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/bounds.hpp"
#include "numrad/matrix.hpp"
#include "numrad/random.hpp"

namespace numrad {

enum class EnsembleKind {
  Ginibre,
  Hermitian,
  Normal,
  Unitary,
  NilpotentPerturbed,
  InvertibleShifted,
  OffDiagPair,
  ScalarPair,
  CommutingPolyPair,
};

std::string_view to_string(EnsembleKind kind);
std::optional<EnsembleKind> ensemble_kind_from_string(std::string_view name);
bool is_pair_kind(EnsembleKind kind);

inline constexpr std::size_t kMaxEnsembleDimension = 64;

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Ginibre;
  std::size_t dim = 4;
  std::uint64_t seed = 42;
  std::size_t count = 100;
  double epsilon = 1e-2;      // NilpotentPerturbed diagonal shift
  bool real_scalars = true;   // ScalarPair draws real r, s when set

  /// Throws InvalidArgumentError when a field is out of range.
  void validate() const;
};

/// One generated sample: a single operator, or an (R, S) pair for pair kinds.
struct Sample {
  ComplexMatrix first;
  std::optional<ComplexMatrix> second;
};

/// Deterministic in (spec.seed, index); independent of generation order.
Sample generate(const EnsembleSpec& spec, std::size_t index);

// Individual generators, driven by an explicit stream.
ComplexMatrix ginibre(std::size_t n, Xoshiro256& rng);
ComplexMatrix hermitian(std::size_t n, Xoshiro256& rng);
ComplexMatrix haar_like_unitary(std::size_t n, Xoshiro256& rng);
ComplexMatrix normal_matrix(std::size_t n, Xoshiro256& rng);
ComplexMatrix nilpotent_perturbed(std::size_t n, double epsilon, Xoshiro256& rng);
ComplexMatrix invertible_shifted(std::size_t n, Xoshiro256& rng);

/// FNV-1a over the shape and the IEEE bit patterns of every entry, as 16 hex digits.
std::string matrix_digest(const Sample& sample);

struct VerificationRecord {
  std::size_t sample_index = 0;
  std::string digest;
  std::vector<CheckVerdict> checks;
};

/// Report key for a verdict: its check name, suffixed with "_n<k>" for powered checks.
std::string check_key(const CheckVerdict& verdict);

struct CheckTally {
  std::size_t holds = 0;
  std::size_t vacuous = 0;
  std::size_t violation = 0;
  double min_slack = 0.0;  // most negative (or smallest) slack observed
  bool informational = false;
};

struct SuiteFailure {
  std::size_t sample_index = 0;
  std::string check;
  Sample sample;
};

struct SuiteSummary {
  EnsembleSpec spec;
  double tolerance = kDefaultTolerance;
  std::vector<VerificationRecord> records;
  std::map<std::string, CheckTally> tallies;
  std::size_t failures = 0;
  std::optional<SuiteFailure> first_failure;

  bool failed() const { return failures > 0; }
};

/// Verifies every sample of the ensemble. Samples are processed on up to
/// `workers` threads (0 selects configured_workers()) and reduced in index
/// order, so the summary does not depend on the worker count.
SuiteSummary run_suite(const EnsembleSpec& spec, double tol = kDefaultTolerance,
                       std::size_t workers = 0);

/// The checks that run_suite applies to one sample of the given kind.
std::vector<CheckVerdict> verify_sample(EnsembleKind kind, const Sample& sample, double tol);

struct SlackHistogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::size_t> counts;  // kHistogramBins equal-width bins over [lo, hi]
};

inline constexpr std::size_t kHistogramBins = 32;

struct SlackStatistics {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  SlackHistogram histogram;
};

/// Per-check slack statistics over all records. Throws InvalidArgumentError on empty input.
std::map<std::string, SlackStatistics> slack_statistics(
    const std::vector<VerificationRecord>& records);

enum class SearchMode { Mixed, HermitianOnly };

struct CounterexampleReport {
  bool found = false;
  std::optional<ComplexMatrix> matrix;
  double norm = 0.0;
  double radius = 0.0;
  double dee = 0.0;
  double inv_norm_sq_recip = 0.0;  // |A^-1|^-2
  std::size_t sample_index = 0;
  std::size_t samples_tried = 0;
};

inline constexpr std::uint64_t kDefaultCounterexampleSeed = 7;

/// Random search for an invertible A with |A| > sqrt2 w(A). Every violator is
/// checked to fail the hypothesis D(A) <= |A^-1|^-2; a violator satisfying it
/// raises Error, since that would contradict the conditional sqrt2 bound.
CounterexampleReport search_sqrt2_counterexample(std::size_t dim, std::size_t budget,
                                                 std::uint64_t seed = kDefaultCounterexampleSeed,
                                                 SearchMode mode = SearchMode::Mixed);

}  // namespace numrad
