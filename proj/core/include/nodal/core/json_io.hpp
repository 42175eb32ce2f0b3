#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "nodal/core/matrix.hpp"
#include "nodal/core/poly.hpp"

namespace nodal {

using Json = nlohmann::json;
using Point = std::vector<Rat>;

/// Default variable labels x0, x1, ... for a ring of the given arity.
std::vector<std::string> default_var_names(std::size_t arity);

/// { "arity": n, "vars": [...], "terms": [ { "e": [...], "c": "p/q" } ] },
/// terms in descending graded-lex order.
Json poly_to_json(const MultiPoly& p, const std::vector<std::string>& vars);
Json poly_to_json(const MultiPoly& p);
/// Throws FormatError on any schema violation.
MultiPoly poly_from_json(const Json& j);
std::vector<std::string> poly_vars_from_json(const Json& j);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);
/// { "points": [ ["0","0","1"], ... ] }
Json points_to_json(const std::vector<Point>& pts);
std::vector<Point> points_from_json(const Json& j);

/// Rows of exact rational strings.
Json matrix_to_json(const RatMatrix& m);

}  // namespace nodal
