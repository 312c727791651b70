#include "numrad/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "numrad/linalg.hpp"
#include "numrad/serialize.hpp"

namespace numrad::cli {
namespace {

Json envelope(std::string_view command, const std::optional<std::uint64_t>& seed, double tol) {
  Json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = command;
  doc["seed"] = seed ? Json(*seed) : Json(nullptr);
  doc["tolerance"] = tol;
  return doc;
}

int failures_in(const std::vector<CheckVerdict>& checks, std::ostream& err) {
  int failures = 0;
  for (const CheckVerdict& v : checks) {
    if (!v.is_failure()) continue;
    ++failures;
    err << "violation: " << check_key(v) << " slack " << format_double(v.slack) << "\n";
  }
  return failures;
}

void require_square(const ComplexMatrix& t) {
  if (!t.is_square()) {
    throw DimensionError("matrix must be square, got " + std::to_string(t.rows()) + "x" +
                         std::to_string(t.cols()));
  }
}

void require_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol)) throw InvalidArgumentError("--tol must be a finite value >= 0");
}

std::string csv_line(double theta, Complex z) {
  return format_double(theta) + "," + format_double(z.real()) + "," + format_double(z.imag()) + "\n";
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int cmd_radius(const RadiusArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_tolerance(args.tol);
    const ComplexMatrix t = read_matrix_file(args.path);
    require_square(t);
    OperatorQuantities q;
    q.radius = numerical_radius(t, args.grid);
    q.norm = operator_norm(t);
    const CheckVerdict sandwich = check_norm_sandwich(q, args.tol);

    Json doc = envelope("radius", std::nullopt, args.tol);
    Json report = to_json(q.radius);
    report["norm"] = q.norm;
    report["checks"] = Json::array({to_json(sandwich)});
    doc["report"] = std::move(report);
    write_json(out, doc);

    err << "w(T) = " << format_double(q.radius.value) << ", |T| = " << format_double(q.norm) << "\n";
    return failures_in({sandwich}, err) ? kExitViolation : kExitOk;
  });
}

int cmd_bounds(const BoundsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_tolerance(args.tol);
    const ComplexMatrix t = read_matrix_file(args.path);
    require_square(t);
    const BoundsReport report = bounds_report(t, args.tol);

    Json doc = envelope("bounds", std::nullopt, args.tol);
    doc["report"] = to_json(report);
    write_json(out, doc);

    err << "w(T) = " << format_double(report.radius) << ", " << report.checks.size()
        << " checks\n";
    return failures_in(report.checks, err) ? kExitViolation : kExitOk;
  });
}

int cmd_offdiag(const OffdiagArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_tolerance(args.tol);
    if (args.n < 1 || args.n > 3) throw InvalidArgumentError("--n must be 1, 2 or 3");
    const ComplexMatrix r = read_matrix_file(args.path_r);
    const ComplexMatrix s = read_matrix_file(args.path_s);
    if (r.rows() != s.cols() || r.cols() != s.rows()) {
      throw DimensionError("blocks are not conformable: R is " + std::to_string(r.rows()) + "x" +
                           std::to_string(r.cols()) + ", S is " + std::to_string(s.rows()) + "x" +
                           std::to_string(s.cols()));
    }
    PairOptions options;
    options.background = false;
    options.off_diagonal_powers = {args.n};
    const PairReport report = pair_report(r, s, args.tol, options);

    Json doc = envelope("offdiag", std::nullopt, args.tol);
    Json body = to_json(report);
    body["n"] = args.n;
    doc["report"] = std::move(body);
    write_json(out, doc);

    err << "w(T) = " << format_double(report.block_radius)
        << ", (|R|+|S|)/2 = " << format_double(report.half_norm_sum) << "\n";
    return failures_in(report.checks, err) ? kExitViolation : kExitOk;
  });
}

int cmd_ensemble(const EnsembleArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_tolerance(args.tol);
    const auto kind = ensemble_kind_from_string(args.kind);
    if (!kind) throw InvalidArgumentError("unknown ensemble kind \"" + args.kind + "\"");
    EnsembleSpec spec;
    spec.kind = *kind;
    spec.dim = args.dim;
    spec.count = args.count;
    spec.seed = args.seed;
    spec.epsilon = args.epsilon;
    spec.real_scalars = !args.complex_scalars;
    spec.validate();

    const SuiteSummary summary = run_suite(spec, args.tol);
    Json doc = envelope("ensemble", args.seed, args.tol);
    doc["report"] = to_json(summary, args.records);
    write_json(out, doc);

    err << to_string(spec.kind) << ": " << spec.count << " samples, " << summary.failures
        << " failing\n";
    if (summary.first_failure) {
      err << "first failure: sample " << summary.first_failure->sample_index << " ("
          << summary.first_failure->check << ")\n";
    }
    return summary.failed() ? kExitViolation : kExitOk;
  });
}

int cmd_cain(const CainArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.budget < 1) throw InvalidArgumentError("--budget must be at least 1");
    if (args.dim < 2 || args.dim > kMaxEnsembleDimension) {
      throw InvalidArgumentError("--dim must be in 2.." + std::to_string(kMaxEnsembleDimension));
    }
    const SearchMode mode = args.hermitian ? SearchMode::HermitianOnly : SearchMode::Mixed;
    CounterexampleReport report;
    try {
      report = search_sqrt2_counterexample(args.dim, args.budget, args.seed, mode);
    } catch (const InvalidArgumentError&) {
      throw;
    } catch (const Error& ex) {
      err << "contradiction: " << ex.what() << "\n";
      return kExitViolation;
    }

    Json doc = envelope("cain", args.seed, kDefaultTolerance);
    Json body = to_json(report);
    body["mode"] = args.hermitian ? "hermitian" : "mixed";
    doc["report"] = std::move(body);
    write_json(out, doc);

    if (report.found) {
      err << "found after " << report.samples_tried << " samples: |A| = "
          << format_double(report.norm) << ", w(A) = " << format_double(report.radius) << "\n";
    } else {
      err << "no counterexample in " << report.samples_tried << " samples\n";
    }
    return kExitOk;
  });
}

int cmd_range(const RangeArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ComplexMatrix t = read_matrix_file(args.path);
    require_square(t);
    const RangeBoundary boundary = numerical_range_boundary(t, args.points);

    std::ostringstream csv;
    csv << "theta,re,im\n";
    for (std::size_t i = 0; i < boundary.points.size(); ++i) {
      csv << csv_line(boundary.thetas[i], boundary.points[i]);
    }
    if (args.out) {
      std::ofstream file(*args.out, std::ios::binary);
      if (!file) throw InvalidArgumentError("cannot write " + *args.out);
      file << csv.str();
      if (!file) throw InvalidArgumentError("failed writing " + *args.out);
      err << boundary.points.size() << " boundary points written to " << *args.out << "\n";
    } else {
      out << csv.str();
    }
    return kExitOk;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical radius estimates and inequality checks", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  RadiusArgs radius;
  auto* radius_cmd = app.add_subcommand("radius", "Numerical radius of a matrix file");
  radius_cmd->add_option("path", radius.path, "Matrix file")->required();
  radius_cmd->add_option("--tol", radius.tol, "Check tolerance");
  radius_cmd->add_option("--grid", radius.grid, "Coarse angle grid size")
      ->check(CLI::Range(std::size_t{8}, std::size_t{1} << 24));

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "All single-operator checks");
  bounds_cmd->add_option("path", bounds.path, "Matrix file")->required();
  bounds_cmd->add_option("--tol", bounds.tol, "Check tolerance");

  OffdiagArgs offdiag;
  auto* offdiag_cmd = app.add_subcommand("offdiag", "Checks for the block matrix [[0, R], [S, 0]]");
  offdiag_cmd->add_option("path_r", offdiag.path_r, "Matrix file for R")->required();
  offdiag_cmd->add_option("path_s", offdiag.path_s, "Matrix file for S")->required();
  offdiag_cmd->add_option("--tol", offdiag.tol, "Check tolerance");
  offdiag_cmd->add_option("--n", offdiag.n, "Power for the off-diagonal radius bounds")
      ->check(CLI::Range(1, 3));

  EnsembleArgs ensemble;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "Verify a seeded random ensemble");
  ensemble_cmd->add_option("--kind", ensemble.kind, "Ensemble kind");
  ensemble_cmd->add_option("--dim", ensemble.dim, "Matrix dimension");
  ensemble_cmd->add_option("--count", ensemble.count, "Number of samples");
  ensemble_cmd->add_option("--seed", ensemble.seed, "Base seed");
  ensemble_cmd->add_option("--tol", ensemble.tol, "Check tolerance");
  ensemble_cmd->add_option("--epsilon", ensemble.epsilon, "Diagonal shift for nilpotent_perturbed");
  ensemble_cmd->add_flag("--complex-scalars", ensemble.complex_scalars,
                         "Draw complex scalars for scalar_pair");
  ensemble_cmd->add_flag("--records", ensemble.records, "Include per-sample records");

  CainArgs cain;
  auto* cain_cmd = app.add_subcommand("cain", "Search for a matrix with |A| > sqrt2 w(A)");
  cain_cmd->add_option("--dim", cain.dim, "Matrix dimension");
  cain_cmd->add_option("--budget", cain.budget, "Maximum number of samples");
  cain_cmd->add_option("--seed", cain.seed, "Base seed");
  cain_cmd->add_flag("--hermitian", cain.hermitian, "Draw Hermitian samples only");

  RangeArgs range;
  auto* range_cmd = app.add_subcommand("range", "Boundary points of the numerical range as CSV");
  range_cmd->add_option("path", range.path, "Matrix file")->required();
  range_cmd->add_option("--points", range.points, "Number of angles")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 24));
  range_cmd->add_option("--out", range.out, "Output CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    err << "run '" << kToolName << " --help' for usage\n";
    return kExitUsage;
  }

  if (radius_cmd->parsed()) return cmd_radius(radius, out, err);
  if (bounds_cmd->parsed()) return cmd_bounds(bounds, out, err);
  if (offdiag_cmd->parsed()) return cmd_offdiag(offdiag, out, err);
  if (ensemble_cmd->parsed()) return cmd_ensemble(ensemble, out, err);
  if (cain_cmd->parsed()) return cmd_cain(cain, out, err);
  return cmd_range(range, out, err);
}

}  // namespace numrad::cli
