#pragma once

#include <string>
#include <string_view>

#include "polyspan/carrier.hpp"
#include "polyspan/data_map.hpp"
#include "polyspan/span.hpp"

namespace polyspan {

/**
 * Graph text format:
 *
 *     n m [directed|full]
 *     u v w        (m lines; w a non-negative integer or "inf")
 *
 * Edge order is preserved. In `full` mode E = V^2 in row-major order; the
 * listed lines set weights of those pairs and every other pair is "inf".
 * Blank lines and lines starting with '#' are ignored. Errors are
 * ParseError with the 1-based line number, or InputError.
 */
GraphContext parse_graph(std::string_view text);
GraphContext load_graph(const std::string& path);

/// JSON object with string members W, X, Y, Z, i, p, o.
SpanSpec parse_span_spec(std::string_view json);
PolynomialSpan load_span_spec(const std::string& path);

/// One row per non-empty line, whitespace-separated numbers, "inf", "-inf".
RowMatrix<double> parse_rows(std::string_view text);

/// Integral values print as integers, infinities as "inf"/"-inf", anything
/// else with 9 significant digits.
std::string format_value(double v);

std::string read_file(const std::string& path);

}  // namespace polyspan
