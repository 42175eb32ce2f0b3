#include <gtest/gtest.h>

#include <random>

#include "nodal/degeneration/degeneration.hpp"
#include "oracles.hpp"

using namespace nodal;
using namespace nodal::degen;
using nodal::testing::cofactor_det;
using nodal::testing::random_poly;
using nodal::testing::random_rat;

namespace {

MultiPoly v(std::size_t arity, std::size_t i) { return MultiPoly::variable(arity, i); }
MultiPoly c(std::size_t arity, Rat r) { return MultiPoly::constant(arity, r); }
MultiPoly parse3(const std::vector<std::pair<std::vector<int>, long>>& ts) {
  std::vector<Term<Rat>> out;
  for (const auto& [e, k] : ts) out.push_back({Monomial(std::span<const int>(e)), Rat(k)});
  return MultiPoly::from_terms(3, std::move(out));
}

}  // namespace

// --- Chow ring of the exceptional quadric ---

TEST(ChowF0, IntersectionForm) {
  const auto s = DivisorClassF0::sigma();
  const auto f = DivisorClassF0::fibre();
  EXPECT_EQ(intersect(s, s), 0);
  EXPECT_EQ(intersect(f, f), 0);
  EXPECT_EQ(intersect(s, f), 1);
  EXPECT_EQ(intersect(s + f, s + f), 2);
}

TEST(ChowF0, Identities) {
  const auto r = chow_f0_identities();
  EXPECT_EQ(r.e, (DivisorClassF0{-1, -1}));
  EXPECT_EQ(r.theta_restr, (DivisorClassF0{-1, -1}));
  EXPECT_EQ(r.epp_restr, (DivisorClassF0{1, -1}));
  EXPECT_EQ(r.e.str(), "-σ - f");
  EXPECT_EQ(r.epp_restr.str(), "σ - f");
  EXPECT_EQ(r.f_dot_e, -1);
  EXPECT_EQ(r.e_squared, 2);
  EXPECT_EQ(r.e_squared_normal_bundle, 2);
}

TEST(ChowF0, SolutionIsUnique) {
  const auto r = chow_f0_identities();
  EXPECT_NE(r.system_det, 0);
  // Brute force over a box: only one class meets both constraints.
  const auto f = DivisorClassF0::fibre();
  int hits = 0;
  for (long a = -20; a <= 20; ++a) {
    for (long b = -20; b <= 20; ++b) {
      const DivisorClassF0 e{a, b};
      if (intersect(f, e) == -1 && intersect(e, e) == 2) {
        ++hits;
        EXPECT_EQ(e, r.e);
      }
    }
  }
  EXPECT_EQ(hits, 1);
}

TEST(ChowF0, RelationHolds) {
  const auto r = chow_f0_identities();
  EXPECT_EQ(2 * DivisorClassF0::fibre() + r.theta_restr + r.epp_restr, (DivisorClassF0{0, 0}));
}

TEST(ThetaRestriction, Examples) {
  auto t0 = theta_restriction_class(0);
  EXPECT_EQ(t0.fibre_coeff, -2);
  EXPECT_EQ(t0.e_coeff, 0);
  EXPECT_FALSE(t0.effective);
  auto t1 = theta_restriction_class(1);
  EXPECT_EQ(t1.fibre_coeff, 0);
  EXPECT_EQ(t1.e_coeff, 1);
  EXPECT_TRUE(t1.effective);
  auto t2 = theta_restriction_class(2);
  EXPECT_EQ(t2.fibre_coeff, 2);
  EXPECT_EQ(t2.e_coeff, 2);
  EXPECT_TRUE(t2.effective);
  EXPECT_EQ(minimal_effective_mF(), 1);
  EXPECT_THROW(theta_restriction_class(-1), PreconditionError);
}

// --- Deformation family ---

TEST(DeformationSlice, Examples) {
  auto s = deformation_slice(Rat(-1));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->alpha, Rat(2));
  // y^2 + 2y + y z^2 + y u^2 + 1
  EXPECT_EQ(s->surface_chart, parse3({{{2, 0, 0}, 1}, {{1, 0, 0}, 2}, {{1, 2, 0}, 1}, {{1, 0, 2}, 1}, {{0, 0, 0}, 1}}));
  EXPECT_EQ(deformation_slice(Rat(-4))->alpha, Rat(4));
  EXPECT_FALSE(deformation_slice(Rat(1)));
  EXPECT_FALSE(deformation_slice(Rat(-2)));
  EXPECT_THROW(deformation_slice(Rat(0)), PreconditionError);
}

TEST(DeformationSlice, AlphaSquaredIsMinusFourT) {
  for (long p = 1; p <= 12; ++p) {
    for (long q = 1; q <= 12; ++q) {
      const Rat t = -Rat(p * p, q * q);
      for (int sign : {1, -1}) {
        auto s = deformation_slice(t, sign);
        ASSERT_TRUE(s);
        EXPECT_EQ(s->alpha * s->alpha + Rat(4) * t, Rat(0));
        EXPECT_EQ(s->alpha.sign(), sign);
      }
    }
  }
}

TEST(VerifyT1ToNode, MinusOne) {
  const auto c = verify_t1_to_node(Rat(-1));
  EXPECT_TRUE(c.report.is(sing::PointClass::NodeA1));
  EXPECT_EQ(c.report.point, (Point{Rat(-1), Rat(0), Rat(0)}));
  EXPECT_EQ(*c.report.witness.hessian_det, Rat(8));
  ASSERT_TRUE(c.cone_scalar);
  // 2Y^2 - 2z^2 - 2u^2 up to scalar.
  const MultiPoly expected = parse3({{{2, 0, 0}, 2}, {{0, 2, 0}, -2}, {{0, 0, 2}, -2}});
  EXPECT_TRUE(proportionality(c.tangent_cone, expected).has_value());
  EXPECT_TRUE(c.verified);
}

TEST(VerifyT1ToNode, QuarterAndErrors) {
  const auto c = verify_t1_to_node(Rat(-1, 4));
  EXPECT_TRUE(c.verified);
  EXPECT_EQ(c.report.point, (Point{Rat(-1, 2), Rat(0), Rat(0)}));
  EXPECT_THROW(verify_t1_to_node(Rat(0)), PreconditionError);
  EXPECT_THROW(verify_t1_to_node(Rat(3)), NoRationalSlice);
}

TEST(VerifyT1ToNode, HessianDetMatchesClosedForm) {
  // Chart Hessian at (-alpha/2, 0, 0) is diag(2, -alpha, -alpha).
  for (long k = 1; k <= 30; ++k) {
    const Rat r(k, 7);
    const auto c = verify_t1_to_node(-r * r);
    const Rat alpha = Rat(2) * r;
    EXPECT_EQ(*c.report.witness.hessian_det, Rat(2) * alpha * alpha);
  }
}

TEST(VerifyT1ToNodeProperty, SampledSquaresAreNodes) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 60; ++i) {
    const long p = 1 + static_cast<long>(rng() % 200);
    const long q = 1 + static_cast<long>(rng() % 50);
    const Rat t = -Rat(p * p, 4 * q * q);
    if (t.abs() > Rat(10000)) continue;
    EXPECT_TRUE(verify_t1_to_node(t).verified) << t.str();
  }
}

TEST(VerifyT1ToNodeProperty, NodeConvergesToOrigin) {
  Rat previous(1000);
  for (long k = 1; k <= 40; ++k) {
    const Rat t = -Rat(1, k * k);
    const auto c = verify_t1_to_node(t);
    ASSERT_TRUE(c.verified);
    const Rat dist = c.report.point[0].abs();
    EXPECT_EQ(dist, c.slice.alpha.abs() / Rat(2));
    EXPECT_LT(dist, previous);
    EXPECT_TRUE(c.report.point[1].is_zero() && c.report.point[2].is_zero());
    previous = dist;
  }
  EXPECT_EQ(previous, Rat(1, 40));
}

TEST(VerifyT1ToNodeProperty, OppositeSlicesMirror) {
  // Both signs give nodes, at (-alpha/2, 0, 0) and (alpha/2, 0, 0).
  for (long k = 1; k <= 10; ++k) {
    const Rat t = -Rat(k * k, 9);
    const auto plus = verify_t1_to_node(t, 1);
    const auto minus = verify_t1_to_node(t, -1);
    EXPECT_TRUE(plus.verified && minus.verified);
    EXPECT_EQ(plus.report.point[0], -minus.report.point[0]);
    EXPECT_EQ(plus.slice.surface_chart - minus.slice.surface_chart,
              c(3, Rat(2) * plus.slice.alpha) * v(3, 0));
  }
}

// --- Hessian limit ---

TEST(HessianLimit, Examples) {
  const MultiPoly x = v(4, 0), y = v(4, 1), z = v(4, 2), u = v(4, 3);
  auto h1 = hessian_limit_check(x + y + z * z + u * u);
  EXPECT_EQ(h1.det_b0, Rat(1));
  EXPECT_EQ(h1.disc, Rat(1));
  EXPECT_TRUE(h1.verified);
  auto h2 = hessian_limit_check(x + y + z * u);
  EXPECT_EQ(h2.det_b0, Rat(-1, 4));
  EXPECT_EQ(h2.disc, Rat(-1, 4));
  EXPECT_TRUE(h2.verified);
  auto h3 = hessian_limit_check(x + y + z * z);
  EXPECT_EQ(h3.det_b0, Rat(0));
  EXPECT_EQ(h3.disc, Rat(0));
  EXPECT_TRUE(h3.verified);
}

TEST(HessianLimit, Preconditions) {
  const MultiPoly x = v(4, 0), y = v(4, 1), z = v(4, 2);
  EXPECT_THROW(hessian_limit_check(x + y + z * z + c(4, Rat(1))), PreconditionError);
  EXPECT_THROW(hessian_limit_check(c(4, Rat(2)) * x + y + z * z), PreconditionError);
  EXPECT_THROW(hessian_limit_check(x + z * z), PreconditionError);
  EXPECT_THROW(hessian_limit_check(v(3, 0)), PreconditionError);
}

TEST(HessianLimitProperty, RandomNormalForms) {
  std::mt19937_64 rng(2024);
  const MultiPoly x = v(4, 0), y = v(4, 1), z = v(4, 2), u = v(4, 3);
  int degenerate = 0;
  for (int i = 0; i < 100; ++i) {
    const Rat a = random_rat(rng, 4), b = random_rat(rng, 4);
    // Every fourth case forces b^2 = 4ac.
    const Rat cc = (i % 4 == 0) ? (a.is_zero() ? Rat(0) : b * b / (Rat(4) * a)) : random_rat(rng, 4);
    const MultiPoly noise = random_poly(rng, 4, 4, 8);
    // Keep the noise at order >= 2 and out of the pure (z, u) quadratic.
    MultiPoly high(4);
    for (const auto& t : noise.terms()) {
      const int deg = t.mono.degree();
      const bool zu_only = t.mono[0] == 0 && t.mono[1] == 0;
      if (deg >= 3 || (deg == 2 && !zu_only)) high = high + MultiPoly::monomial(4, t.mono, t.coeff);
    }
    const MultiPoly p = x + y + c(4, a) * z * z + c(4, b) * z * u + c(4, cc) * u * u + high;
    const auto h = hessian_limit_check(p);
    // Independent: generating coefficients and a cofactor determinant of B0.
    const Rat disc = a * cc - b * b / Rat(4);
    std::vector<std::vector<Rat>> rows;
    for (std::size_t r = 0; r < 3; ++r) rows.emplace_back(h.b0.row(r).begin(), h.b0.row(r).end());
    EXPECT_EQ(h.disc, disc);
    EXPECT_EQ(cofactor_det(rows), disc);
    EXPECT_TRUE(h.verified) << p.to_string();
    if (disc.is_zero()) ++degenerate;
  }
  EXPECT_GE(degenerate, 20);
}

TEST(Degeneration, JsonReports) {
  const auto j = to_json(verify_t1_to_node(Rat(-1)));
  EXPECT_EQ(j.at("class"), "NodeA1");
  EXPECT_EQ(j.at("hessian_det"), "8");
  EXPECT_EQ(j.at("alpha"), "2");
  const auto k = to_json(hessian_limit_check(v(4, 0) + v(4, 1) + v(4, 2) * v(4, 3)));
  EXPECT_EQ(k.at("det_B0"), "-1/4");
  EXPECT_EQ(k.at("verdict"), "Verified");
  const auto m = to_json(chow_f0_identities());
  EXPECT_EQ(m.at("epp_restr").at("str"), "σ - f");
  EXPECT_EQ(m.at("minimal_effective_mF"), 1);
}
