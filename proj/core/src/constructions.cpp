#include "nodal/constructions/constructions.hpp"

#include <algorithm>
#include <random>

#include "nodal/severi/severi.hpp"

namespace nodal::cons {

namespace {

const std::vector<std::string> kPlaneVars = {"x", "y", "z"};
const std::vector<std::string> kSpaceVars = {"x", "y", "z", "w"};
const std::vector<std::string> kBVars = {"x", "y", "z", "t"};

Rat draw(std::mt19937_64& rng) {
  return Rat(static_cast<long>(rng() % static_cast<std::uint64_t>(2 * kCoeffBound + 1)) - kCoeffBound);
}

MultiPoly random_form(std::mt19937_64& rng, std::size_t arity, int degree) {
  std::vector<Term<Rat>> ts;
  for (const auto& m : monomials_of_degree(arity, degree)) ts.push_back({m, draw(rng)});
  return MultiPoly::from_terms(arity, std::move(ts));
}

std::vector<Rat> linear_coeffs(const MultiPoly& l) {
  return {l.coeff(Monomial::variable(0)), l.coeff(Monomial::variable(1)), l.coeff(Monomial::variable(2))};
}

std::vector<Rat> cross(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero_vec(const std::vector<Rat>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x.is_zero(); });
}

std::vector<MultiPoly> draw_lines(std::mt19937_64& rng, int k) {
  std::vector<MultiPoly> out;
  for (int i = 0; i < k; ++i) out.push_back(random_form(rng, 3, 1));
  return out;
}

MultiPoly to_plane_chart(const MultiPoly& form, std::size_t c) {
  static const std::size_t map[2] = {1, 2};
  return form.dehomogenize(c).embed(3, map);
}

std::string pstr(const Point& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ":" : "") + p[i].str();
  return s + "]";
}

Json points_json(const std::vector<Point>& pts) { return points_to_json(pts).at("points"); }

}  // namespace

// ---------------------------------------------------------------------------
// Lines

std::optional<std::string> arrangement_defect(const std::vector<MultiPoly>& lines) {
  std::vector<std::vector<Rat>> cs;
  for (const auto& l : lines) {
    if (l.arity() != 3 || l.is_zero() || !l.is_homogeneous() || l.degree().value() != 1) {
      return "not a nonzero linear form in x, y, z";
    }
    cs.push_back(linear_coeffs(l));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      if (is_zero_vec(cross(cs[i], cs[j]))) {
        return "lines " + std::to_string(i) + " and " + std::to_string(j) + " are proportional";
      }
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      for (std::size_t k = j + 1; k < cs.size(); ++k) {
        const auto n = cross(cs[i], cs[j]);
        const Rat det = n[0] * cs[k][0] + n[1] * cs[k][1] + n[2] * cs[k][2];
        if (det.is_zero()) {
          return "lines " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + " are concurrent";
        }
      }
    }
  }
  return std::nullopt;
}

LineArrangement LineArrangement::from_lines(std::vector<MultiPoly> ls) {
  if (auto defect = arrangement_defect(ls)) throw PreconditionError("line arrangement is not general: " + *defect);
  LineArrangement a;
  a.lines = std::move(ls);
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    for (std::size_t j = i + 1; j < a.lines.size(); ++j) {
      a.nodes.push_back(severi::normalize_projective(cross(linear_coeffs(a.lines[i]), linear_coeffs(a.lines[j]))));
    }
  }
  return a;
}

MultiPoly LineArrangement::product() const {
  MultiPoly p = MultiPoly::constant(3, Rat(1));
  for (const auto& l : lines) p = p * l;
  return p;
}

LineArrangement general_lines(int k, std::uint64_t seed, int retries) {
  if (k < 2) throw PreconditionError("general_lines needs k >= 2");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto ls = draw_lines(rng, k);
    if (!arrangement_defect(ls)) return LineArrangement::from_lines(std::move(ls));
  }
  throw GenericityFailure("genericity failure: no general arrangement of " + std::to_string(k) +
                          " lines for seed " + std::to_string(seed) + " within " + std::to_string(retries) +
                          " retries");
}

LineArrangement canonical_triangle() {
  const MultiPoly x = MultiPoly::variable(3, 0);
  const MultiPoly y = MultiPoly::variable(3, 1);
  const MultiPoly z = MultiPoly::variable(3, 2);
  return LineArrangement::from_lines({x, y, x + y - z});
}

// ---------------------------------------------------------------------------
// Charts

MultiPoly blowup_chart(const MultiPoly& phi1, const MultiPoly& phi2, std::size_t chart_var) {
  if (chart_var > 2) throw PreconditionError("chart variable must be x, y or z");
  const MultiPoly s = MultiPoly::variable(3, 0);
  return to_plane_chart(phi1, chart_var) + s * to_plane_chart(phi2, chart_var);
}

MultiPoly b_chart(const MultiPoly& sB, std::size_t chart_var) {
  if (chart_var > 2) throw PreconditionError("chart variable must be x, y or z");
  if (sB.arity() != 4) throw ArityMismatch(4, sB.arity());
  // Remaining order after dehomogenizing: the two plane coordinates, then t.
  static const std::size_t map[3] = {1, 2, 0};
  return sB.dehomogenize(chart_var).embed(3, map);
}

Point chart_point(const Point& p, std::size_t chart_var) {
  if (p.size() != 3) throw ArityMismatch(3, p.size());
  if (p[chart_var].is_zero()) throw PreconditionError("point " + pstr(p) + " is not in the chart");
  Point out;
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != chart_var) out.push_back(p[i] / p[chart_var]);
  }
  return out;
}

std::optional<std::size_t> visible_chart(const std::vector<Point>& nodes) {
  for (std::size_t c = 0; c < 3; ++c) {
    if (std::none_of(nodes.begin(), nodes.end(), [&](const Point& p) { return p[c].is_zero(); })) return c;
  }
  return std::nullopt;
}

int multiplicity_at_q(const SurfaceWitness& w) {
  const MultiPoly affine = w.projective_equation.drop_variable(3, Rat(1));
  if (affine.is_zero()) throw PreconditionError("zero surface equation");
  return affine.min_degree().value();
}

// ---------------------------------------------------------------------------
// Witness

SurfaceWitness witness_from_parts(const LineArrangement& lines, const MultiPoly& phi2, const MultiPoly& psi,
                                  std::uint64_t seed) {
  const int d = static_cast<int>(lines.lines.size()) + 1;
  if (d < 3) throw PreconditionError("witness needs d >= 3");
  if (phi2.arity() != 3 || !phi2.is_homogeneous() || phi2.is_zero() || phi2.degree().value() != d) {
    throw PreconditionError("phi2 must be a nonzero form of degree d in x, y, z");
  }
  if (psi.arity() != 4 || !psi.is_homogeneous() || psi.is_zero() || psi.degree().value() != d - 2) {
    throw PreconditionError("psi must be a nonzero form of degree d - 2 in x, y, z, t");
  }
  for (const auto& n : lines.nodes) {
    if (phi2.eval(n).is_zero()) throw GenericityFailure("genericity failure: phi2 vanishes at node " + pstr(n));
    if (psi.eval(Point{n[0], n[1], n[2], Rat(0)}).is_zero()) {
      throw GenericityFailure("genericity failure: psi vanishes at node " + pstr(n));
    }
  }
  const auto c = visible_chart(lines.nodes);
  if (!c) throw GenericityFailure("genericity failure: no coordinate chart contains every node");

  SurfaceWitness w;
  w.d = d;
  w.seed = seed;
  w.chart_var = *c;
  w.arrangement = lines;
  w.phi1 = lines.product();
  w.phi2 = phi2;
  static const std::size_t plane_to_space[3] = {0, 1, 2};
  const MultiPoly w4 = MultiPoly::variable(4, 3);
  w.projective_equation = w4 * w.phi1.embed(4, plane_to_space) + w.phi2.embed(4, plane_to_space);
  w.blowup_chart_A = blowup_chart(w.phi1, w.phi2, w.chart_var);
  w.sB_equation = w.phi1.embed(4, plane_to_space) + w4 * psi;
  if (multiplicity_at_q(w) != d - 1) throw Error("witness does not have multiplicity d - 1 at q");
  return w;
}

SurfaceWitness witness_over(const LineArrangement& lines, std::uint64_t seed, int retries) {
  const int d = static_cast<int>(lines.lines.size()) + 1;
  std::mt19937_64 rng(seed);
  std::string last = "genericity failure: retry budget exhausted";
  for (int attempt = 0; attempt < retries; ++attempt) {
    const MultiPoly phi2 = random_form(rng, 3, d);
    const MultiPoly psi = random_form(rng, 4, d - 2);
    try {
      return witness_from_parts(lines, phi2, psi, seed);
    } catch (const GenericityFailure& e) {
      last = e.what();
    }
  }
  throw GenericityFailure(last + " (seed " + std::to_string(seed) + ", " + std::to_string(retries) + " retries)");
}

SurfaceWitness theorem42_witness(int d, std::uint64_t seed, int retries) {
  if (d < 3) throw PreconditionError("witness needs d >= 3");
  std::mt19937_64 rng(seed);
  std::string last = "genericity failure: retry budget exhausted";
  for (int attempt = 0; attempt < retries; ++attempt) {
    auto ls = draw_lines(rng, d - 1);
    const MultiPoly phi2 = random_form(rng, 3, d);
    const MultiPoly psi = random_form(rng, 4, d - 2);
    if (auto defect = arrangement_defect(ls)) {
      last = "genericity failure: " + *defect;
      continue;
    }
    try {
      return witness_from_parts(LineArrangement::from_lines(std::move(ls)), phi2, psi, seed);
    } catch (const GenericityFailure& e) {
      last = e.what();
    }
  }
  throw GenericityFailure(last + " (seed " + std::to_string(seed) + ", " + std::to_string(retries) + " retries)");
}

sing::S0Spec central_fibre(const SurfaceWitness& w) {
  sing::S0Spec s;
  s.gA = w.blowup_chart_A;
  s.gB = b_chart(w.sB_equation, w.chart_var);
  s.chartA = sing::LocalChart({"s", "v", "w"}, "blow-up of q, s = 0 is R");
  s.chartB = sing::LocalChart({"r", "v", "w"}, "B = P3, r = 0 is R");
  for (const auto& n : w.arrangement.nodes) s.claimed_T1.push_back(chart_point(n, w.chart_var));
  sing::validate(s);
  return s;
}

// ---------------------------------------------------------------------------
// Certification

namespace {

StageCertificate construction_stage(const SurfaceWitness& w) {
  StageCertificate st{"construction", Verdict::Certified, "", Json::object()};
  auto fail = [&](std::string why) {
    st.verdict = Verdict::Refuted;
    st.detail = std::move(why);
    return st;
  };
  const int d = w.d;
  if (w.phi1.arity() != 3 || !w.phi1.is_homogeneous() || w.phi1.degree().value() != d - 1) {
    return fail("phi1 is not a form of degree d - 1");
  }
  if (w.phi2.arity() != 3 || !w.phi2.is_homogeneous() || w.phi2.degree().value() != d) {
    return fail("phi2 is not a form of degree d");
  }
  if (!w.arrangement.lines.empty() && w.arrangement.product() != w.phi1) return fail("phi1 is not the product of the lines");
  const int mult = multiplicity_at_q(w);
  st.data["multiplicity_at_q"] = mult;
  if (mult != d - 1) return fail("multiplicity at q is " + std::to_string(mult) + ", expected d - 1");
  if (w.blowup_chart_A != blowup_chart(w.phi1, w.phi2, w.chart_var)) return fail("chart A is not the blow-up chart");
  st.detail = "multiplicity d - 1 at q, chart A is the blow-up chart";
  return st;
}

}  // namespace

CertificateBundle certify_witness(const SurfaceWitness& w, const CertifyOptions& opts) {
  CertificateBundle b;
  const std::size_t c = w.chart_var;
  const auto& nodes = w.arrangement.nodes;

  b.stages.push_back(construction_stage(w));

  // Gluing. The raw spec is kept for later stages even if validation fails.
  sing::S0Spec spec;
  spec.gA = w.blowup_chart_A;
  spec.gB = b_chart(w.sB_equation, c);
  bool glued = false;
  {
    StageCertificate st{"gluing", Verdict::Certified, "", Json::object()};
    try {
      spec = central_fibre(w);
      glued = true;
      st.data["lambda"] = sing::gluing_scalar(spec)->str();
      st.detail = "gA|R = lambda * gB|R";
    } catch (const Error& e) {
      st.verdict = Verdict::Refuted;
      st.detail = e.what();
    }
    b.stages.push_back(st);
  }

  const std::size_t expected = static_cast<std::size_t>(severi::binomial(w.d - 1, 2));
  // Nodes of C as curve nodes in the chart of R.
  {
    StageCertificate st{"nodes", Verdict::Certified, "", Json::object()};
    st.data["count"] = nodes.size();
    st.data["expected"] = expected;
    try {
      const MultiPoly curve = sing::restriction_to_R(w.blowup_chart_A);
      for (const auto& n : nodes) {
        const auto r = sing::classify_curve_point(curve, chart_point(n, c));
        if (!r.is(sing::PointClass::NodeA1)) {
          st.verdict = Verdict::Refuted;
          st.detail = "C is " + sing::to_string(r.kind) + " at " + pstr(n);
          break;
        }
      }
      if (st.verdict == Verdict::Certified && nodes.size() != expected) {
        st.verdict = Verdict::Refuted;
        st.detail = std::to_string(nodes.size()) + " nodes, expected " + std::to_string(expected);
      }
      if (st.verdict == Verdict::Certified) st.detail = std::to_string(nodes.size()) + " ordinary nodes of C";
    } catch (const Error& e) {
      st.verdict = Verdict::Refuted;
      st.detail = e.what();
    }
    b.stages.push_back(st);
  }

  // T1 at every claimed point.
  {
    StageCertificate st{"T1", Verdict::Certified, "", Json::object()};
    if (!glued) {
      st.verdict = Verdict::Inconclusive;
      st.detail = "not run: gluing failed";
    } else {
      Json reports = Json::array();
      std::size_t count = 0;
      try {
        for (const auto& p : spec.claimed_T1) {
          const auto r = sing::certify_t1(spec, p);
          reports.push_back(sing::to_json(r));
          if (r.is(sing::PointClass::T1)) {
            ++count;
          } else if (st.verdict == Verdict::Certified) {
            st.verdict = Verdict::Refuted;
            st.detail = r.reason + " at " + pstr(p);
          }
        }
      } catch (const Error& e) {
        st.verdict = Verdict::Refuted;
        st.detail = e.what();
      }
      st.data["reports"] = reports;
      st.data["count"] = count;
      if (st.verdict == Verdict::Certified) st.detail = std::to_string(count) + " T1 points";
    }
    b.stages.push_back(st);
  }

  // Smoothness of S_A and S_B in their charts.
  {
    StageCertificate st{"smoothness", Verdict::Certified, "", Json::object()};
    sing::ExclusionOptions eo;
    eo.degree_cap = opts.degree_cap;
    eo.prefilter_prime = opts.prefilter_prime;
    const auto ra = sing::exclude_extra_singularities(spec.gA, spec.chartA, {}, eo);
    const auto rb = sing::exclude_extra_singularities(spec.gB, spec.chartB, {}, eo);
    st.verdict = combine(ra.verdict, rb.verdict);
    st.data["S_A"] = {{"verdict", to_string(ra.verdict)}, {"detail", ra.detail}};
    st.data["S_B"] = {{"verdict", to_string(rb.verdict)}, {"detail", rb.detail}};
    if (st.verdict == Verdict::Certified) {
      st.detail = "S_A and S_B smooth in their charts";
    } else {
      st.detail = ra.verdict != Verdict::Certified ? "S_A: " + ra.detail : "S_B: " + rb.detail;
    }
    b.stages.push_back(st);
  }

  // Regularity against |O_P2(d - 1)|.
  {
    StageCertificate st{"regularity", Verdict::Certified, "", Json::object()};
    try {
      const auto cm = severi::condition_matrix(severi::SystemSpec::p2(w.d - 1), nodes);
      const auto r = severi::independence_rank(cm);
      st.data = severi::to_json(r, cm);
      st.verdict = r.regular ? Verdict::Certified : Verdict::Refuted;
      st.detail = "rank " + std::to_string(r.rank) + " of " + std::to_string(nodes.size()) + " conditions on " +
                  std::to_string(cm.basis.size()) + " forms";
    } catch (const Error& e) {
      st.verdict = Verdict::Refuted;
      st.detail = e.what();
    }
    b.stages.push_back(st);
  }

  b.verdict = Verdict::Certified;
  for (const auto& st : b.stages) b.verdict = combine(b.verdict, st.verdict);
  for (Verdict want : {Verdict::Refuted, Verdict::Inconclusive}) {
    if (!b.failing_stage.empty()) break;
    for (const auto& st : b.stages) {
      if (st.verdict == want) {
        b.failing_stage = st.stage;
        break;
      }
    }
  }
  return b;
}

Json witness_to_json(const SurfaceWitness& w) {
  Json lines = Json::array();
  for (const auto& l : w.arrangement.lines) lines.push_back(poly_to_json(l, kPlaneVars));
  return {{"d", w.d},
          {"seed", w.seed},
          {"chart_var", kPlaneVars[w.chart_var]},
          {"lines", lines},
          {"phi1", poly_to_json(w.phi1, kPlaneVars)},
          {"phi2", poly_to_json(w.phi2, kPlaneVars)},
          {"projective_equation", poly_to_json(w.projective_equation, kSpaceVars)},
          {"sB", poly_to_json(w.sB_equation, kBVars)},
          {"chartA", poly_to_json(w.blowup_chart_A, {"s", "v", "w"})},
          {"nodes", points_json(w.arrangement.nodes)}};
}

SurfaceWitness witness_from_json(const Json& j) {
  try {
    SurfaceWitness w;
    w.d = j.at("d").get<int>();
    w.seed = j.value("seed", std::uint64_t{0});
    const std::string cv = j.at("chart_var").get<std::string>();
    const auto it = std::find(kPlaneVars.begin(), kPlaneVars.end(), cv);
    if (it == kPlaneVars.end()) throw FormatError("chart_var must be x, y or z");
    w.chart_var = static_cast<std::size_t>(it - kPlaneVars.begin());
    if (j.contains("lines")) {
      for (const auto& l : j.at("lines")) w.arrangement.lines.push_back(poly_from_json(l));
    }
    w.arrangement.nodes = points_from_json(Json{{"points", j.at("nodes")}});
    w.phi1 = poly_from_json(j.at("phi1"));
    w.phi2 = poly_from_json(j.at("phi2"));
    w.sB_equation = poly_from_json(j.at("sB"));
    w.blowup_chart_A = poly_from_json(j.at("chartA"));
    if (j.contains("projective_equation")) {
      w.projective_equation = poly_from_json(j.at("projective_equation"));
    } else {
      static const std::size_t m[3] = {0, 1, 2};
      w.projective_equation = MultiPoly::variable(4, 3) * w.phi1.embed(4, m) + w.phi2.embed(4, m);
    }
    if (w.phi1.arity() != 3 || w.phi2.arity() != 3 || w.blowup_chart_A.arity() != 3) {
      throw FormatError("phi1, phi2 and chartA must have 3 variables");
    }
    if (w.sB_equation.arity() != 4 || w.projective_equation.arity() != 4) {
      throw FormatError("sB and projective_equation must have 4 variables");
    }
    for (const auto& n : w.arrangement.nodes) {
      if (n.size() != 3) throw FormatError("nodes are points of P2");
    }
    return w;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad witness JSON: ") + e.what());
  }
}

Json to_json(const CertificateBundle& b) {
  Json stages = Json::array();
  for (const auto& st : b.stages) {
    stages.push_back({{"stage", st.stage}, {"verdict", to_string(st.verdict)}, {"detail", st.detail}, {"data", st.data}});
  }
  Json j = {{"certificates", stages}, {"verdict", to_string(b.verdict)}};
  if (!b.failing_stage.empty()) j["failing_stage"] = b.failing_stage;
  return j;
}

}  // namespace nodal::cons
