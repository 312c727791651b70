#include "numrad/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace numrad {
namespace {

double finite_number(const Json& value, const char* what) {
  if (!value.is_number()) throw ParseError(std::string(what) + " must be a number");
  const double d = value.get<double>();
  if (!std::isfinite(d)) throw ParseError(std::string(what) + " must be finite");
  return d;
}

std::size_t dimension(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("matrix document lacks \"") + key + "\"");
  const Json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError(std::string("\"") + key + "\" must be a positive integer");
  }
  return v.get<std::size_t>();
}

void write_value(std::ostream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(key).dump() << ": ";
        write_value(os, item, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const Json& e) {
        return e.is_primitive();
      });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          write_value(os, v[i], indent + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_value(os, v[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(v.get<double>());
      return;
    default:
      os << v.dump();
      return;
  }
}

Json complex_pair(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

ComplexMatrix matrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  const std::size_t rows = dimension(doc, "rows");
  const std::size_t cols = dimension(doc, "cols");
  if (!doc.contains("entries") || !doc.at("entries").is_array()) {
    throw ParseError("matrix document lacks an \"entries\" array");
  }
  const Json& entries = doc.at("entries");
  if (entries.size() != rows * cols) {
    throw ParseError("\"entries\" holds " + std::to_string(entries.size()) +
                     " values, expected rows*cols = " + std::to_string(rows * cols));
  }
  std::vector<Complex> values;
  values.reserve(entries.size());
  for (const Json& e : entries) {
    if (!e.is_array() || e.size() != 2) throw ParseError("each entry must be a [re, im] pair");
    values.emplace_back(finite_number(e[0], "entry real part"),
                        finite_number(e[1], "entry imaginary part"));
  }
  try {
    return ComplexMatrix(rows, cols, std::move(values));
  } catch (const InvalidMatrixError& ex) {
    throw ParseError(ex.what());
  }
}

ComplexMatrix parse_matrix(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("invalid JSON: ") + ex.what());
  }
  return matrix_from_json(doc);
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const Complex& z : m.entries()) entries.push_back(complex_pair(z));
  Json doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  doc["entries"] = std::move(entries);
  return doc;
}

std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return std::signbit(value) ? "-0.0" : "0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void write_json(std::ostream& os, const Json& doc) {
  write_value(os, doc, 0);
  os << "\n";
}

std::string dump_json(const Json& doc) {
  std::ostringstream os;
  write_json(os, doc);
  return os.str();
}

Json to_json(const CheckVerdict& v) {
  Json j;
  j["check"] = to_string(v.id);
  if (v.power > 0) j["n"] = v.power;
  j["status"] = to_string(v.status);
  j["slack"] = v.slack;
  j["threshold"] = v.threshold;
  j["hypothesis_slack"] = v.hypothesis_slack ? Json(*v.hypothesis_slack) : Json(nullptr);
  j["parts"] = v.parts;
  j["informational"] = v.informational;
  return j;
}

Json to_json(const RadiusEstimate& est) {
  Json witness = Json::array();
  for (const Complex& z : est.witness) witness.push_back(complex_pair(z));
  Json j;
  j["radius"] = est.value;
  j["theta_star"] = est.theta_star;
  j["witness"] = std::move(witness);
  j["grid_points"] = est.grid_points;
  j["refined"] = est.refined;
  return j;
}

namespace {

Json checks_json(const std::vector<CheckVerdict>& checks) {
  Json arr = Json::array();
  for (const CheckVerdict& v : checks) arr.push_back(to_json(v));
  return arr;
}

}  // namespace

Json to_json(const BoundsReport& report) {
  Json j;
  j["norm"] = report.norm;
  j["radius"] = report.radius;
  j["alpha_t"] = report.alpha_t;
  j["alpha_tstar"] = report.alpha_tstar;
  j["dee"] = report.dee;
  j["gee"] = report.gee;
  j["estimate"] = to_json(report.estimate);
  j["checks"] = checks_json(report.checks);
  return j;
}

Json to_json(const PairReport& report) {
  Json j;
  j["r_norm"] = report.r_norm;
  j["s_norm"] = report.s_norm;
  j["block_radius"] = report.block_radius;
  j["half_norm_sum"] = report.half_norm_sum;
  j["block_gee"] = report.block_gee;
  j["checks"] = checks_json(report.checks);
  return j;
}

Json to_json(const std::map<std::string, SlackStatistics>& stats) {
  Json j = Json::object();
  for (const auto& [key, s] : stats) {
    Json entry;
    entry["count"] = s.count;
    entry["min"] = s.min;
    entry["max"] = s.max;
    entry["mean"] = s.mean;
    entry["histogram"] = {{"lo", s.histogram.lo},
                          {"hi", s.histogram.hi},
                          {"counts", s.histogram.counts}};
    j[key] = std::move(entry);
  }
  return j;
}

Json to_json(const SuiteSummary& summary, bool include_records) {
  Json spec;
  spec["kind"] = to_string(summary.spec.kind);
  spec["dim"] = summary.spec.dim;
  spec["seed"] = summary.spec.seed;
  spec["count"] = summary.spec.count;
  if (summary.spec.kind == EnsembleKind::NilpotentPerturbed) spec["epsilon"] = summary.spec.epsilon;
  if (summary.spec.kind == EnsembleKind::ScalarPair) spec["real_scalars"] = summary.spec.real_scalars;

  Json tallies = Json::object();
  for (const auto& [key, t] : summary.tallies) {
    tallies[key] = {{"holds", t.holds},
                    {"vacuous", t.vacuous},
                    {"violation", t.violation},
                    {"min_slack", t.min_slack},
                    {"informational", t.informational}};
  }

  Json j;
  j["spec"] = std::move(spec);
  j["tolerance"] = summary.tolerance;
  j["failed"] = summary.failed();
  j["failures"] = summary.failures;
  j["tallies"] = std::move(tallies);
  j["statistics"] = to_json(slack_statistics(summary.records));
  if (summary.first_failure) {
    const SuiteFailure& f = *summary.first_failure;
    Json fail;
    fail["sample_index"] = f.sample_index;
    fail["check"] = f.check;
    fail["matrix"] = matrix_to_json(f.sample.first);
    if (f.sample.second) fail["second"] = matrix_to_json(*f.sample.second);
    j["first_failure"] = std::move(fail);
  } else {
    j["first_failure"] = nullptr;
  }
  if (include_records) {
    Json records = Json::array();
    for (const VerificationRecord& r : summary.records) {
      records.push_back(
          {{"sample_index", r.sample_index}, {"digest", r.digest}, {"checks", checks_json(r.checks)}});
    }
    j["records"] = std::move(records);
  }
  return j;
}

Json to_json(const CounterexampleReport& report) {
  Json j;
  j["found"] = report.found;
  j["matrix"] = report.matrix ? matrix_to_json(*report.matrix) : Json(nullptr);
  j["norm"] = report.norm;
  j["radius"] = report.radius;
  j["dee"] = report.dee;
  j["inv_norm_sq_recip"] = report.inv_norm_sq_recip;
  j["sample_index"] = report.sample_index;
  j["samples_tried"] = report.samples_tried;
  return j;
}

}  // namespace numrad
