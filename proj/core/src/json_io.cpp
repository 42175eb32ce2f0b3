#include "nodal/core/json_io.hpp"

#include "nodal/core/error.hpp"

namespace nodal {

std::vector<std::string> default_var_names(std::size_t arity) {
  static const std::vector<std::string> four = {"x", "y", "z", "u"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arity; ++i) {
    out.push_back(arity <= 4 ? four[i] : "x" + std::to_string(i));
  }
  return out;
}

Json poly_to_json(const MultiPoly& p, const std::vector<std::string>& vars) {
  if (vars.size() != p.arity()) throw ArityMismatch(p.arity(), vars.size());
  Json terms = Json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"e", t.mono.exponents(p.arity())}, {"c", t.coeff.str()}});
  }
  return {{"arity", p.arity()}, {"vars", vars}, {"terms", terms}};
}

Json poly_to_json(const MultiPoly& p) { return poly_to_json(p, default_var_names(p.arity())); }

MultiPoly poly_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw FormatError("polynomial must be a JSON object");
    const auto arity = j.at("arity").get<std::size_t>();
    if (arity > kMaxArity) throw FormatError("polynomial arity too large");
    if (j.contains("vars") && j.at("vars").size() != arity) {
      throw FormatError("'vars' length does not match 'arity'");
    }
    std::vector<Term<Rat>> terms;
    for (const auto& t : j.at("terms")) {
      const auto e = t.at("e").get<std::vector<int>>();
      if (e.size() != arity) throw FormatError("exponent array length does not match 'arity'");
      for (int x : e) {
        if (x < 0) throw FormatError("negative exponent");
      }
      const Json& c = t.at("c");
      const Rat coeff = c.is_string() ? Rat::parse(c.get<std::string>()) : Rat(c.get<long>());
      terms.push_back({Monomial(std::span<const int>(e)), coeff});
    }
    return MultiPoly::from_terms(arity, std::move(terms));
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad polynomial JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("bad polynomial JSON: ") + e.what());
  }
}

std::vector<std::string> poly_vars_from_json(const Json& j) {
  if (j.contains("vars")) return j.at("vars").get<std::vector<std::string>>();
  return default_var_names(j.at("arity").get<std::size_t>());
}

Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(x.str());
  return a;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) throw FormatError("point must be an array of rational strings");
  Point p;
  for (const auto& x : j) {
    if (x.is_string()) {
      p.push_back(Rat::parse(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      p.push_back(Rat(x.get<long>()));
    } else {
      throw FormatError("point coordinates must be rational strings or integers");
    }
  }
  return p;
}

Json points_to_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_to_json(p));
  return {{"points", a}};
}

std::vector<Point> points_from_json(const Json& j) {
  try {
    std::vector<Point> out;
    for (const auto& p : j.at("points")) out.push_back(point_from_json(p));
    return out;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad points JSON: ") + e.what());
  }
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : m.row(i)) row.push_back(x.str());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nodal
