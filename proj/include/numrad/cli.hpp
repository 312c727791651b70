#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "numrad/bounds.hpp"
#include "numrad/ensemble.hpp"
#include "numrad/radius.hpp"

namespace numrad::cli {

inline constexpr const char* kToolName = "numrad";
inline constexpr const char* kToolVersion = "0.1.0";

// Process exit codes. No other values are ever returned.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct RadiusArgs {
  std::string path;
  double tol = kDefaultTolerance;
  std::size_t grid = kDefaultCoarseGrid;
};

struct BoundsArgs {
  std::string path;
  double tol = kDefaultTolerance;
};

struct OffdiagArgs {
  std::string path_r;
  std::string path_s;
  double tol = kDefaultTolerance;
  int n = 1;
};

struct EnsembleArgs {
  std::string kind = "ginibre";
  std::size_t dim = 4;
  std::size_t count = 100;
  std::uint64_t seed = 42;
  double tol = kDefaultTolerance;
  double epsilon = 1e-2;
  bool complex_scalars = false;
  bool records = false;
};

struct CainArgs {
  std::size_t dim = 2;
  std::size_t budget = 10000;
  std::uint64_t seed = kDefaultCounterexampleSeed;
  bool hermitian = false;
};

struct RangeArgs {
  std::string path;
  std::size_t points = 256;
  std::optional<std::string> out;
};

// Each command writes its document to `out`, a short human summary to `err`,
// and returns one of the exit codes above.
int cmd_radius(const RadiusArgs& args, std::ostream& out, std::ostream& err);
int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err);
int cmd_offdiag(const OffdiagArgs& args, std::ostream& out, std::ostream& err);
int cmd_ensemble(const EnsembleArgs& args, std::ostream& out, std::ostream& err);
int cmd_cain(const CainArgs& args, std::ostream& out, std::ostream& err);
int cmd_range(const RangeArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace numrad::cli
