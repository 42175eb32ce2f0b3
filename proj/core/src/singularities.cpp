#include "nodal/singularities/singularities.hpp"

#include <algorithm>
#include <set>

namespace nodal::sing {

namespace {

bool all_zero(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) s += ", ";
    s += p[i].str();
  }
  return s + ")";
}

// Shared by surfaces and curves: critical point with full-rank Hessian is a node.
SingularityReport classify_critical(const MultiPoly& f, const Point& q) {
  if (q.size() != f.arity()) throw ArityMismatch(f.arity(), q.size());
  SingularityReport r;
  r.point = q;
  r.witness.value = f.eval(q);
  if (!r.witness.value.is_zero()) {
    throw PreconditionError("point not on surface: value " + r.witness.value.str() + " at " + point_str(q));
  }
  r.witness.gradient = gradient_at(f, q);
  if (!all_zero(r.witness.gradient)) {
    r.kind = PointClass::Smooth;
    return r;
  }
  const std::size_t n = f.arity();
  RatMatrix h(n, n, hessian_at(f, q));
  r.hessian_rank = mat_rank(h);
  r.witness.hessian_det = mat_det(h);
  r.witness.hessian = std::move(h);
  r.kind = r.hessian_rank == n ? PointClass::NodeA1 : PointClass::DegenerateCritical;
  return r;
}

bool same_point(const Point& a, const Point& b) { return a == b; }

// Sufficient test for V(ideal) = {} over the algebraic closure of Q. The
// homogenized generators cut out a closed subscheme of projective space over
// Z localized at p, which is proper; if its fibre at p is empty then so is
// its generic fibre, and the affine zero set sits inside the latter.
bool projectively_empty_mod_p(const std::vector<MultiPoly>& ideal, std::uint64_t prime) {
  std::vector<PolyFp> gens;
  int cap = 1;
  for (const auto& g : ideal) {
    if (g.is_zero()) continue;
    auto r = reduce_mod(g.homogenize(), prime);
    if (!r || r->is_zero()) return false;
    cap += g.degree().value();
    gens.push_back(std::move(*r));
  }
  if (gens.empty()) return false;
  const auto gb = buchberger(gens, cap);
  if (!gb.complete()) return false;
  if (gb.is_unit_ideal()) return true;
  const std::size_t n = gens.front().arity();
  std::vector<bool> pure(n, false);
  for (const auto& g : gb.basis) {
    const Monomial& m = g.leading_monomial();
    std::size_t seen = 0;
    std::size_t var = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] > 0) {
        ++seen;
        var = i;
      }
    }
    if (seen == 1) pure[var] = true;
  }
  return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
}

}  // namespace

LocalChart::LocalChart(std::vector<std::string> names, std::string note_text)
    : var_names(std::move(names)), note(std::move(note_text)) {
  std::set<std::string> seen(var_names.begin(), var_names.end());
  if (seen.size() != var_names.size()) throw PreconditionError("chart variable names must be distinct");
}

LocalChart LocalChart::standard(std::size_t arity, std::string note_text) {
  return LocalChart(default_var_names(arity), std::move(note_text));
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::Smooth: return "Smooth";
    case PointClass::NodeA1: return "NodeA1";
    case PointClass::T1: return "T1";
    case PointClass::DegenerateCritical: return "DegenerateCritical";
    case PointClass::Refuted: return "Refuted";
  }
  return "Refuted";
}

Json to_json(const SingularityReport& r) {
  Json j = {{"point", point_to_json(r.point)}, {"class", to_string(r.kind)}, {"all_exact", true}};
  Json grad = Json::array();
  for (const auto& g : r.witness.gradient) grad.push_back(g.str());
  j["gradient"] = grad;
  if (r.witness.hessian_det) j["hessian_det"] = r.witness.hessian_det->str();
  if (r.witness.hessian) {
    j["hessian_rank"] = r.hessian_rank;
    j["hessian"] = matrix_to_json(*r.witness.hessian);
  }
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

SingularityReport classify_point(const MultiPoly& f, const LocalChart& chart, const Point& q) {
  if (f.arity() != 3) throw PreconditionError("classify_point needs a 3-variable local equation");
  if (chart.arity() != 3) throw ArityMismatch(3, chart.arity());
  return classify_critical(f, q);
}

SingularityReport classify_curve_point(const MultiPoly& g, const Point& q) {
  if (g.arity() != 2) throw PreconditionError("classify_curve_point needs a 2-variable equation");
  return classify_critical(g, q);
}

// ---------------------------------------------------------------------------
// T1

MultiPoly restriction_to_R(const MultiPoly& g) {
  if (g.arity() != 3) throw PreconditionError("chart equations of S0 have 3 variables");
  return g.drop_variable(0, Rat(0));
}

std::optional<Rat> gluing_scalar(const S0Spec& spec) {
  const MultiPoly a = restriction_to_R(spec.gA);
  const MultiPoly b = restriction_to_R(spec.gB);
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  const Rat lambda = a.leading_coeff() / b.leading_coeff();
  if (a == b.scaled(lambda)) return lambda;
  return std::nullopt;
}

void validate(const S0Spec& spec) {
  if (spec.gA.arity() != 3 || spec.gB.arity() != 3) {
    throw PreconditionError("S0 chart equations must have 3 variables");
  }
  if (spec.chartA.arity() != 3 || spec.chartB.arity() != 3) {
    throw PreconditionError("S0 charts must have 3 variables");
  }
  if (!gluing_scalar(spec)) {
    throw GluingMismatch("gluing mismatch: gA|R and gB|R do not cut the same curve on R");
  }
  for (const auto& p : spec.claimed_T1) {
    if (p.size() != 2) throw PreconditionError("claimed T1 points are (z, u) points of R");
  }
  std::vector<Point> all;
  for (const auto& p : spec.claimed_T1) all.push_back({Rat(0), p[0], p[1]});
  for (const auto& list : {&spec.claimed_nodes_A, &spec.claimed_nodes_B}) {
    for (const auto& p : *list) {
      if (p.size() != 3) throw PreconditionError("claimed nodes are chart points with 3 coordinates");
    }
  }
  all.insert(all.end(), spec.claimed_nodes_A.begin(), spec.claimed_nodes_A.end());
  // Nodes of S_A and S_B live in different charts; only each list against
  // the T1 points and itself is meaningful.
  auto check_disjoint = [](const std::vector<Point>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (same_point(pts[i], pts[j])) throw PreconditionError("claimed point lists overlap");
      }
    }
  };
  check_disjoint(all);
  std::vector<Point> all_b;
  for (const auto& p : spec.claimed_T1) all_b.push_back({Rat(0), p[0], p[1]});
  all_b.insert(all_b.end(), spec.claimed_nodes_B.begin(), spec.claimed_nodes_B.end());
  check_disjoint(all_b);
}

SingularityReport certify_t1(const S0Spec& spec, const Point& p) {
  if (p.size() != 2) throw PreconditionError("T1 candidate must be a point (z, u) of R");
  const MultiPoly c = restriction_to_R(spec.gA);
  if (!c.eval(p).is_zero()) {
    throw PreconditionError("point " + point_str(p) + " is not on C = S_A n R");
  }
  if (!gluing_scalar(spec)) {
    throw GluingMismatch("gluing mismatch: gA|R and gB|R do not cut the same curve on R");
  }

  SingularityReport r;
  r.point = p;
  const Point on_r = {Rat(0), p[0], p[1]};
  const auto grad_a = gradient_at(spec.gA, on_r);
  const auto grad_b = gradient_at(spec.gB, on_r);
  const auto curve = classify_curve_point(c, p);
  r.witness = curve.witness;
  r.hessian_rank = curve.hessian_rank;
  if (all_zero(grad_a)) {
    r.kind = PointClass::Refuted;
    r.reason = "S_A singular at p";
  } else if (all_zero(grad_b)) {
    r.kind = PointClass::Refuted;
    r.reason = "S_B singular at p";
  } else if (curve.is(PointClass::Smooth)) {
    r.kind = PointClass::Refuted;
    r.reason = "C smooth at p";
  } else if (curve.is(PointClass::DegenerateCritical)) {
    r.kind = PointClass::Refuted;
    r.reason = "C has degenerate double point";
  } else {
    r.kind = PointClass::T1;
  }
  return r;
}

NodeSetReport certify_node_set(const MultiPoly& f, const LocalChart& chart, const std::vector<Point>& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (same_point(points[i], points[j])) throw PreconditionError("node candidates must be pairwise distinct");
    }
  }
  NodeSetReport out;
  for (const auto& q : points) {
    out.reports.push_back(classify_point(f, chart, q));
    if (!out.reports.back().is(PointClass::NodeA1)) out.all_nodes = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Singular locus

ExclusionResult exclude_extra_singularities(const MultiPoly& f, const LocalChart& chart,
                                            const std::vector<Point>& allowed, const ExclusionOptions& opts) {
  if (f.arity() != 3 || chart.arity() != 3) {
    throw PreconditionError("exclude_extra_singularities needs a 3-variable local equation");
  }
  if (f.is_zero()) throw PreconditionError("exclude_extra_singularities needs a nonzero equation");
  std::vector<Point> wanted;
  for (const auto& p : allowed) {
    if (p.size() != 3) throw ArityMismatch(3, p.size());
    if (std::find(wanted.begin(), wanted.end(), p) == wanted.end()) wanted.push_back(p);
  }

  const std::vector<MultiPoly> ideal = {f, f.derive(0), f.derive(1), f.derive(2)};
  const GroebnerOptions gopts{opts.degree_cap, opts.prefilter_prime};
  if (wanted.empty() && opts.prefilter_prime && projectively_empty_mod_p(ideal, *opts.prefilter_prime)) {
    ExclusionResult out;
    out.verdict = Verdict::Certified;
    out.detail = "singular locus is empty (closure has no points mod " + std::to_string(*opts.prefilter_prime) + ")";
    return out;
  }
  const auto gb = groebner_basis(ideal, gopts);

  ExclusionResult out;
  out.residual = gb.basis;
  if (!gb.complete()) {
    out.verdict = Verdict::Inconclusive;
    out.detail = "degree cap " + std::to_string(gopts.degree_cap.value_or(default_degree_cap<Rat>(ideal))) +
                 " exceeded";
    return out;
  }
  auto in_locus = [&](const Point& p) {
    return std::all_of(gb.basis.begin(), gb.basis.end(), [&](const MultiPoly& g) { return g.eval(p).is_zero(); });
  };
  for (const auto& p : wanted) {
    if (!in_locus(p)) {
      out.verdict = Verdict::Refuted;
      out.detail = "allowed point " + point_str(p) + " is not singular";
      return out;
    }
  }
  if (gb.is_unit_ideal()) {
    out.verdict = Verdict::Certified;
    out.detail = "singular locus is empty";
    return out;
  }
  const auto qdim = quotient_dimension(gb.basis);
  if (!qdim) {
    out.verdict = Verdict::Refuted;
    out.detail = "singular locus is positive-dimensional";
    return out;
  }
  if (*qdim == wanted.size()) {
    // Each allowed point lies in V(I) and dim Q[x]/I bounds |V(I)| from above.
    out.verdict = Verdict::Certified;
    out.singular_points = wanted;
    out.detail = "singular scheme is reduced and equals the allowed set";
    return out;
  }
  const auto sol = rational_points(gb.basis, gopts);
  out.singular_points = sol.points;
  for (const auto& p : sol.points) {
    if (std::find(wanted.begin(), wanted.end(), p) == wanted.end()) {
      out.verdict = Verdict::Refuted;
      out.detail = "extra singular point " + point_str(p);
      return out;
    }
  }
  if (sol.complete) {
    out.verdict = Verdict::Certified;
    out.detail = "singular locus equals the allowed set (non-reduced singular scheme)";
  } else {
    out.verdict = Verdict::Inconclusive;
    out.detail = "singular points could not all be extracted over Q";
  }
  return out;
}

// ---------------------------------------------------------------------------
// S0 files

S0Spec s0_spec_from_json(const Json& j) {
  try {
    S0Spec s;
    s.gA = poly_from_json(j.at("gA"));
    s.gB = poly_from_json(j.at("gB"));
    if (s.gA.arity() != 3 || s.gB.arity() != 3) throw FormatError("gA and gB must have 3 variables");
    s.chartA = LocalChart(j.value("chartA", poly_vars_from_json(j.at("gA"))));
    s.chartB = LocalChart(j.value("chartB", poly_vars_from_json(j.at("gB"))));
    auto pts = [&](const char* key, std::size_t dim) {
      std::vector<Point> out;
      if (j.contains(key)) out = points_from_json(Json{{"points", j.at(key)}});
      for (const auto& p : out) {
        if (p.size() != dim) throw FormatError(std::string(key) + " entries need " + std::to_string(dim) + " coordinates");
      }
      return out;
    };
    s.claimed_T1 = pts("claimed_T1", 2);
    s.claimed_nodes_A = pts("claimed_nodes_A", 3);
    s.claimed_nodes_B = pts("claimed_nodes_B", 3);
    return s;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad S0 JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw FormatError(std::string("bad S0 JSON: ") + e.what());
  }
}

Json s0_spec_to_json(const S0Spec& s) {
  Json j = {{"gA", poly_to_json(s.gA, s.chartA.var_names)},
            {"gB", poly_to_json(s.gB, s.chartB.var_names)},
            {"chartA", s.chartA.var_names},
            {"chartB", s.chartB.var_names},
            {"claimed_T1", points_to_json(s.claimed_T1).at("points")}};
  if (!s.claimed_nodes_A.empty()) j["claimed_nodes_A"] = points_to_json(s.claimed_nodes_A).at("points");
  if (!s.claimed_nodes_B.empty()) j["claimed_nodes_B"] = points_to_json(s.claimed_nodes_B).at("points");
  return j;
}

}  // namespace nodal::sing
