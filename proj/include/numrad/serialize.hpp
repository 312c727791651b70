#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "numrad/bounds.hpp"
#include "numrad/ensemble.hpp"
#include "numrad/matrix.hpp"
#include "numrad/radius.hpp"

namespace numrad {

using Json = nlohmann::ordered_json;

/// Malformed or unreadable matrix document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses {"rows": r, "cols": c, "entries": [[re, im], ...]} (row-major).
ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix read_matrix_file(const std::string& path);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& doc);

/// Writes `doc` with two-space indentation. Floating-point numbers carry 17
/// significant digits, so every finite double survives a parse unchanged.
void write_json(std::ostream& os, const Json& doc);
std::string dump_json(const Json& doc);

/// %.17g rendering used for every double in reports; zero keeps its sign and
/// integral values gain a trailing ".0".
std::string format_double(double value);

Json to_json(const CheckVerdict& v);
Json to_json(const RadiusEstimate& est);
Json to_json(const BoundsReport& report);
Json to_json(const PairReport& report);
Json to_json(const SuiteSummary& summary, bool include_records);
Json to_json(const std::map<std::string, SlackStatistics>& stats);
Json to_json(const CounterexampleReport& report);

}  // namespace numrad
