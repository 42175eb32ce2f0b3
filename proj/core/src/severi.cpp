#include "nodal/severi/severi.hpp"

#include <algorithm>
#include <map>

namespace nodal::severi {

std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::P3: return "p3";
    case Ambient::P2: return "p2";
    case Ambient::SurfaceInP3: return "ci4";
  }
  return "p3";
}

SystemSpec SystemSpec::p3(int d) {
  SystemSpec s;
  s.ambient = Ambient::P3;
  s.d = d;
  s.validate();
  return s;
}

SystemSpec SystemSpec::p2(int d) {
  SystemSpec s;
  s.ambient = Ambient::P2;
  s.d = d;
  s.validate();
  return s;
}

SystemSpec SystemSpec::surface_in_p3(int h, int d, std::optional<MultiPoly> g_R) {
  SystemSpec s;
  s.ambient = Ambient::SurfaceInP3;
  s.h = h;
  s.d = d;
  s.g_R = std::move(g_R);
  s.validate();
  return s;
}

void SystemSpec::validate() const {
  if (d < 0) throw PreconditionError("degree must be nonnegative");
  if (ambient != Ambient::SurfaceInP3) return;
  if (h < 2) throw PreconditionError("surface case needs h >= 2");
  if (d < h - 1) throw PreconditionError("surface case needs d >= h - 1");
  if (g_R) {
    if (g_R->arity() != 4) throw PreconditionError("g_R must be a form in 4 variables");
    if (g_R->is_zero()) throw PreconditionError("g_R must be nonzero");
    if (!g_R->is_homogeneous() || g_R->degree().value() != h - 1) {
      throw PreconditionError("g_R must be homogeneous of degree h - 1");
    }
  }
}

long binomial(long n, long k) {
  if (k < 0 || n < k || n < 0) return 0;
  k = std::min(k, n - k);
  long r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long linear_system_dim(const SystemSpec& spec) {
  spec.validate();
  const long d = spec.d;
  switch (spec.ambient) {
    case Ambient::P3: return binomial(d + 3, 3) - 1;
    case Ambient::P2: return binomial(d + 2, 2) - 1;
    case Ambient::SurfaceInP3: return binomial(d + 3, 3) - binomial(d - spec.h + 1, 3) - 1;
  }
  return 0;
}

MultiPoly default_surface(int h) {
  if (h < 2) throw PreconditionError("surface degree h - 1 must be positive");
  const MultiPoly w = MultiPoly::variable(4, 3);
  MultiPoly g = MultiPoly(4) - w.pow(static_cast<unsigned>(h - 1));
  for (std::size_t i = 0; i < 3; ++i) g = g + MultiPoly::variable(4, i).pow(static_cast<unsigned>(h - 1));
  return g;
}

long restricted_dim_oracle(int h, int d, const std::optional<MultiPoly>& g_R) {
  if (h < 2 || d < h - 1) throw PreconditionError("oracle needs d >= h - 1 >= 1");
  const MultiPoly g = g_R ? *g_R : default_surface(h);
  if (g.is_zero()) throw PreconditionError("degenerate g_R (zero polynomial)");
  if (g.arity() != 4 || !g.is_homogeneous() || g.degree().value() != h - 1) {
    throw PreconditionError("g_R must be a form of degree h - 1 in 4 variables");
  }
  const auto target = monomials_of_degree(4, d);
  const auto source = monomials_of_degree(4, d - h + 1);
  std::map<Monomial, std::size_t> col;
  for (std::size_t i = 0; i < target.size(); ++i) col[target[i]] = i;
  RatMatrix mult(source.size(), target.size(), Rat(0));
  for (std::size_t r = 0; r < source.size(); ++r) {
    const MultiPoly row = g.times_monomial(source[r]);
    for (const auto& t : row.terms()) mult(r, col.at(t.mono)) = t.coeff;
  }
  return static_cast<long>(target.size()) - static_cast<long>(mat_rank(mult)) - 1;
}

std::optional<long> max_regular_delta(const SystemSpec& spec) {
  spec.validate();
  switch (spec.ambient) {
    case Ambient::P3:
      if (spec.d < 2) throw PreconditionError("P3 bound needs d >= 2");
      return binomial(spec.d - 1, 2);
    case Ambient::SurfaceInP3: return linear_system_dim(spec);
    case Ambient::P2: return std::nullopt;
  }
  return std::nullopt;
}

long heuristic_floor(const SystemSpec& spec) { return linear_system_dim(spec) / 4; }

Point normalize_projective(const Point& p) {
  auto nz = std::find_if(p.begin(), p.end(), [](const Rat& x) { return !x.is_zero(); });
  if (nz == p.end()) throw PreconditionError("projective point cannot be zero");
  const Rat inv = nz->inverse();
  Point out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(x * inv);
  return out;
}

ConditionMatrix condition_matrix(const SystemSpec& spec, const std::vector<Point>& points) {
  spec.validate();
  ConditionMatrix cm;
  cm.system = spec;
  const std::size_t n = spec.coords();
  std::optional<MultiPoly> surface;
  if (spec.ambient == Ambient::SurfaceInP3) surface = spec.g_R ? *spec.g_R : default_surface(spec.h);

  for (const auto& p : points) {
    if (p.size() != n) throw ArityMismatch(n, p.size());
    Point q = normalize_projective(p);
    if (std::find(cm.points.begin(), cm.points.end(), q) != cm.points.end()) {
      throw PreconditionError("duplicate point in condition set");
    }
    if (surface && !surface->eval(q).is_zero()) throw PreconditionError("point off the surface R");
    cm.points.push_back(std::move(q));
  }

  for (const auto& m : monomials_of_degree(n, spec.d)) {
    if (surface && surface->leading_monomial().divides(m)) continue;
    cm.basis.push_back(m);
  }
  cm.matrix = RatMatrix(cm.points.size(), cm.basis.size(), Rat(0));
  for (std::size_t r = 0; r < cm.points.size(); ++r) {
    for (std::size_t c = 0; c < cm.basis.size(); ++c) {
      cm.matrix(r, c) = MultiPoly::monomial(n, cm.basis[c], Rat(1)).eval(cm.points[r]);
    }
  }
  return cm;
}

Independence independence_rank(const ConditionMatrix& cm) {
  Independence r;
  r.rank = mat_rank(cm.matrix);
  r.regular = r.rank == cm.points.size();
  r.tangent_dim = static_cast<long>(cm.basis.size()) - 1 - static_cast<long>(r.rank);
  return r;
}

SystemSpec system_from_json(const Json& j) {
  try {
    const std::string space = j.at("space").get<std::string>();
    const int d = j.at("d").get<int>();
    if (space == "p3") return SystemSpec::p3(d);
    if (space == "p2") return SystemSpec::p2(d);
    if (space == "ci4") {
      std::optional<MultiPoly> g;
      if (j.contains("g_R")) g = poly_from_json(j.at("g_R"));
      return SystemSpec::surface_in_p3(j.at("h").get<int>(), d, g);
    }
    throw FormatError("unknown space '" + space + "'");
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad system JSON: ") + e.what());
  }
}

Json system_to_json(const SystemSpec& s) {
  Json j = {{"space", to_string(s.ambient)}, {"d", s.d}};
  if (s.ambient == Ambient::SurfaceInP3) {
    j["h"] = s.h;
    j["g_R"] = poly_to_json(s.g_R ? *s.g_R : default_surface(s.h), {"x", "y", "z", "w"});
  }
  return j;
}

Json to_json(const Independence& r, const ConditionMatrix& cm) {
  return {{"system", system_to_json(cm.system)},
          {"points", points_to_json(cm.points).at("points")},
          {"conditions", cm.points.size()},
          {"columns", cm.basis.size()},
          {"rank", r.rank},
          {"regular", r.regular},
          {"tangent_dim", r.tangent_dim}};
}

}  // namespace nodal::severi
