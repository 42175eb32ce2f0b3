#include "nodal/degeneration/degeneration.hpp"

namespace nodal::degen {

std::string DivisorClassF0::str() const {
  auto part = [](long c, const char* name, bool first) {
    std::string s;
    if (c == 0) return s;
    if (c < 0) {
      s += first ? "-" : " - ";
    } else if (!first) {
      s += " + ";
    }
    const long m = c < 0 ? -c : c;
    if (m != 1) s += std::to_string(m);
    return s + name;
  };
  if (a == 0 && b == 0) return "0";
  return part(a, "σ", true) + part(b, "f", a == 0);
}

long intersect(DivisorClassF0 x, DivisorClassF0 y) { return x.a * y.b + x.b * y.a; }

ChowF0Record chow_f0_identities() {
  using D = DivisorClassF0;
  const D f = D::fibre();
  const D s = D::sigma();
  ChowF0Record r;

  // e = a σ + b f. f.e = a (since f.σ = 1, f.f = 0) pins a; e^2 = 2ab is then
  // linear in b. Rows in (a, b): [f.σ, f.f] and [0, 2a].
  const long f_e_target = -1;
  const long e2_target = 2;
  const long a = f_e_target / intersect(f, s);
  if (a * intersect(f, s) != f_e_target) throw Error("f.e = -1 has no integral solution");
  r.system_det = intersect(f, s) * (2 * a) - intersect(f, f) * 0;
  if (r.system_det == 0) throw Error("constraint system for e is singular");
  if (e2_target % (2 * a) != 0) throw Error("e^2 = 2 has no integral solution");
  const long b = e2_target / (2 * a);
  r.e = D{a, b};
  r.f_dot_e = intersect(f, r.e);
  r.e_squared = intersect(r.e, r.e);
  if (r.f_dot_e != f_e_target || r.e_squared != e2_target) throw Error("solved class violates its constraints");

  // N = O(-1) + O(-1): c1 = -2.
  r.e_squared_normal_bundle = -(-1 + -1);
  if (r.e_squared_normal_bundle != r.e_squared) throw Error("normal-bundle route disagrees with e^2");

  r.theta_restr = r.e;
  r.epp_restr = -(2 * f) - r.theta_restr;

  r.transcript = {
      "e = a σ + b f",
      "f.e = a = " + std::to_string(r.f_dot_e),
      "e^2 = 2ab = " + std::to_string(r.e_squared) + "  =>  b = " + std::to_string(b),
      "det [[1, 0], [0, 2a]] = " + std::to_string(r.system_det) + "  (unique solution)",
      "e^2 = -c1(O(-1) + O(-1)) = " + std::to_string(r.e_squared_normal_bundle),
      "e = Θ|_E = " + r.theta_restr.str(),
      "2f + Θ|_E + E''|_E = 0  =>  E''|_E = " + r.epp_restr.str(),
  };
  return r;
}

ThetaRestriction theta_restriction_class(long m_F) {
  if (m_F < 0) throw PreconditionError("m_F must be nonnegative");
  ThetaRestriction t;
  t.fibre_coeff = 2 * m_F - 2;
  t.e_coeff = m_F;
  t.effective = t.fibre_coeff >= 0 && t.e_coeff >= 0;
  return t;
}

long minimal_effective_mF() {
  long m = 0;
  while (!theta_restriction_class(m).effective) ++m;
  return m;
}

Json to_json(const ChowF0Record& r) {
  auto cls = [](DivisorClassF0 c) { return Json{{"sigma", c.a}, {"f", c.b}, {"str", c.str()}}; };
  return {{"e", cls(r.e)},
          {"theta_restr", cls(r.theta_restr)},
          {"epp_restr", cls(r.epp_restr)},
          {"f_dot_e", r.f_dot_e},
          {"e_squared", r.e_squared},
          {"system_det", r.system_det},
          {"minimal_effective_mF", minimal_effective_mF()},
          {"transcript", r.transcript}};
}

// ---------------------------------------------------------------------------

std::optional<FamilySlice> deformation_slice(const Rat& t, int sign) {
  if (t.is_zero()) throw PreconditionError("central fibre is the T1 limit, not a node (t = 0)");
  if (sign != 1 && sign != -1) throw PreconditionError("slice sign must be +1 or -1");
  const auto root = (Rat(-4) * t).sqrt();
  if (!root) return std::nullopt;
  FamilySlice s;
  s.t = t;
  s.alpha = *root * Rat(sign);
  // xy - t with x := y + alpha + z^2 + u^2.
  const MultiPoly y = MultiPoly::variable(3, 0);
  const MultiPoly z = MultiPoly::variable(3, 1);
  const MultiPoly u = MultiPoly::variable(3, 2);
  const MultiPoly x = y + MultiPoly::constant(3, s.alpha) + z * z + u * u;
  s.surface_chart = x * y - MultiPoly::constant(3, t);
  return s;
}

Point predicted_node(const FamilySlice& s) { return {-s.alpha / Rat(2), Rat(0), Rat(0)}; }

std::optional<Rat> proportionality(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero() || a.arity() != b.arity()) return std::nullopt;
  const Rat c = a.leading_coeff() / b.leading_coeff();
  if (a == b.scaled(c)) return c;
  return std::nullopt;
}

NodeCheck verify_t1_to_node(const Rat& t, int sign) {
  auto slice = deformation_slice(t, sign);
  if (!slice) throw NoRationalSlice("-4t = " + (Rat(-4) * t).str() + " is not a rational square");
  NodeCheck c;
  c.slice = *slice;
  const Point q = predicted_node(c.slice);
  c.report = sing::classify_point(c.slice.surface_chart, sing::LocalChart({"y", "z", "u"}), q);
  c.tangent_cone = c.slice.surface_chart.translate(q).homogeneous_part(2);
  const MultiPoly Y = MultiPoly::variable(3, 0);
  const MultiPoly z = MultiPoly::variable(3, 1);
  const MultiPoly u = MultiPoly::variable(3, 2);
  const MultiPoly a = MultiPoly::constant(3, c.slice.alpha);
  c.expected_cone = MultiPoly::constant(3, Rat(2)) * Y * Y - a * z * z - a * u * u;
  c.cone_scalar = proportionality(c.tangent_cone, c.expected_cone);
  c.verified = c.report.is(sing::PointClass::NodeA1) && c.cone_scalar.has_value();
  return c;
}

Json to_json(const NodeCheck& c) {
  const std::vector<std::string> chart = {"y", "z", "u"};
  const std::vector<std::string> recentred = {"Y", "z", "u"};
  Json j = sing::to_json(c.report);
  j["t"] = c.slice.t.str();
  j["alpha"] = c.slice.alpha.str();
  j["chart"] = c.slice.surface_chart.to_string(chart);
  j["tangent_cone"] = c.tangent_cone.to_string(recentred);
  j["expected_cone"] = c.expected_cone.to_string(recentred);
  j["cone_scalar"] = c.cone_scalar ? Json(c.cone_scalar->str()) : Json(nullptr);
  j["verified"] = c.verified;
  return j;
}

// ---------------------------------------------------------------------------

HessianLimit hessian_limit_check(const MultiPoly& p) {
  if (p.arity() != 4) throw PreconditionError("hessian_limit_check needs p(x, y, z, u)");
  const Point origin(4, Rat(0));
  if (!p.eval(origin).is_zero()) throw PreconditionError("p(0) must vanish");
  const auto g = gradient_at(p, origin);
  if (g[0] != Rat(1) || g[1] != Rat(1)) throw PreconditionError("normal form needs p_x(0) = p_y(0) = 1");

  const auto h = hessian_at(p, origin);
  auto d2 = [&](std::size_t i, std::size_t j) { return h[i * 4 + j]; };
  const Rat& px = g[0];
  const Rat& py = g[1];
  const Rat half(1, 2);
  const Rat w = half * px * px;

  HessianLimit out;
  out.b0 = RatMatrix{
      {py * px, half * px * (px * d2(1, 2) - py * d2(0, 2)), half * px * (px * d2(1, 3) - py * d2(0, 3))},
      {Rat(0), w * d2(2, 2), w * d2(2, 3)},
      {Rat(0), w * d2(2, 3), w * d2(3, 3)},
  };
  out.det_b0 = mat_det(out.b0);

  // Read the binary quadratic off the coefficients, not the Hessian.
  const MultiPoly q = p.homogeneous_part(2).restrict(0, Rat(0)).restrict(1, Rat(0));
  const Rat a = q.coeff(Monomial::variable(2, 2));
  const Rat b = q.coeff(Monomial::variable(2) * Monomial::variable(3));
  const Rat c = q.coeff(Monomial::variable(3, 2));
  out.disc = a * c - b * b / Rat(4);
  out.verified = out.det_b0 == out.disc;
  return out;
}

Json to_json(const HessianLimit& h) {
  return {{"B0", matrix_to_json(h.b0)},
          {"det_B0", h.det_b0.str()},
          {"disc", h.disc.str()},
          {"disc_convention", kDiscConvention},
          {"verdict", h.verified ? "Verified" : "Refuted"}};
}

}  // namespace nodal::degen
