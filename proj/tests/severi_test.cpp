#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "nodal/severi/severi.hpp"
#include "oracles.hpp"

using namespace nodal;
using namespace nodal::severi;
using nodal::testing::minor_search_rank;

namespace {

Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

// Binomial by Pascal's triangle, independent of the library's product formula.
long pascal(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::vector<long> row = {1};
  for (long i = 1; i <= n; ++i) {
    std::vector<long> next(static_cast<std::size_t>(i + 1), 1);
    for (long j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return row[k];
}

}  // namespace

TEST(Binomial, ConventionAndValues) {
  EXPECT_EQ(binomial(2, 3), 0);
  EXPECT_EQ(binomial(-1, 3), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  for (long n = 0; n <= 40; ++n) {
    for (long k = 0; k <= 6; ++k) EXPECT_EQ(binomial(n, k), pascal(n, k));
  }
}

TEST(LinearSystemDim, Examples) {
  EXPECT_EQ(linear_system_dim(SystemSpec::p3(1)), 3);
  EXPECT_EQ(linear_system_dim(SystemSpec::p3(4)), 34);
  EXPECT_EQ(linear_system_dim(SystemSpec::p3(8)), 164);
  EXPECT_EQ(linear_system_dim(SystemSpec::p2(3)), 9);
  EXPECT_EQ(linear_system_dim(SystemSpec::surface_in_p3(2, 3)), 19);
}

TEST(SystemSpec, Validation) {
  EXPECT_THROW(SystemSpec::p3(-1), PreconditionError);
  EXPECT_THROW(SystemSpec::surface_in_p3(1, 3), PreconditionError);
  EXPECT_THROW(SystemSpec::surface_in_p3(4, 1), PreconditionError);
  EXPECT_THROW(SystemSpec::surface_in_p3(2, 3, MultiPoly(4)), PreconditionError);
  EXPECT_THROW(SystemSpec::surface_in_p3(3, 3, default_surface(2)), PreconditionError);
  EXPECT_NO_THROW(SystemSpec::surface_in_p3(3, 3, default_surface(3)));
}

TEST(MaxRegularDelta, Examples) {
  EXPECT_EQ(*max_regular_delta(SystemSpec::p3(4)), 3);
  EXPECT_EQ(*max_regular_delta(SystemSpec::p3(8)), 21);
  EXPECT_EQ(*max_regular_delta(SystemSpec::p3(2)), 0);
  EXPECT_EQ(*max_regular_delta(SystemSpec::surface_in_p3(2, 3)), 19);
  EXPECT_FALSE(max_regular_delta(SystemSpec::p2(3)));
  EXPECT_THROW(max_regular_delta(SystemSpec::p3(1)), PreconditionError);
}

TEST(MaxRegularDelta, BelowSystemDimension) {
  for (int d = 2; d <= 50; ++d) {
    EXPECT_LE(*max_regular_delta(SystemSpec::p3(d)), linear_system_dim(SystemSpec::p3(d)));
  }
}

TEST(HeuristicFloor, Examples) {
  EXPECT_EQ(heuristic_floor(SystemSpec::p3(4)), 8);
  EXPECT_EQ(heuristic_floor(SystemSpec::p3(1)), 0);
  EXPECT_EQ(heuristic_floor(SystemSpec::p3(8)), 41);
  EXPECT_EQ(heuristic_floor(SystemSpec::surface_in_p3(2, 3)), 4);
}

// The multiplication-rank oracle measures dim |O_R(d)| for R of degree h-1,
// whose closed form is C(d+3,3) - C(d-h+4,3) - 1.
TEST(RestrictedDimOracle, MatchesHilbertFunctionOfR) {
  for (int h = 2; h <= 5; ++h) {
    for (int d = h - 1; d <= 8; ++d) {
      EXPECT_EQ(restricted_dim_oracle(h, d), pascal(d + 3, 3) - pascal(d - h + 4, 3) - 1) << h << "," << d;
    }
  }
}

TEST(RestrictedDimOracle, IndependentOfSurfaceChoice) {
  std::mt19937_64 rng(5);
  for (int h = 2; h <= 4; ++h) {
    for (int trial = 0; trial < 3; ++trial) {
      MultiPoly g(4);
      for (const auto& m : monomials_of_degree(4, h - 1)) {
        g = g + MultiPoly::monomial(4, m, Rat(static_cast<long>(rng() % 19) - 9));
      }
      if (g.is_zero()) continue;
      for (int d = h - 1; d <= 6; ++d) EXPECT_EQ(restricted_dim_oracle(h, d, g), restricted_dim_oracle(h, d));
    }
  }
}

TEST(RestrictedDimOracle, EdgesAndErrors) {
  EXPECT_EQ(restricted_dim_oracle(2, 1), 2);
  EXPECT_EQ(restricted_dim_oracle(2, 3, MultiPoly::variable(4, 0) + MultiPoly::variable(4, 3)), 9);
  EXPECT_THROW(restricted_dim_oracle(2, 3, MultiPoly(4)), PreconditionError);
  EXPECT_THROW(restricted_dim_oracle(3, 1), PreconditionError);
}

TEST(LinearSystemDim, SurfaceFormulaValues) {
  // C(d+3,3) - C(d-h+1,3) - 1 with C(n,3) = 0 below n = 3.
  for (int h = 2; h <= 5; ++h) {
    for (int d = h - 1; d <= 8; ++d) {
      EXPECT_EQ(linear_system_dim(SystemSpec::surface_in_p3(h, d)), pascal(d + 3, 3) - pascal(d - h + 1, 3) - 1);
    }
  }
}

TEST(NormalizeProjective, FirstNonzeroIsOne) {
  EXPECT_EQ(normalize_projective(pt({0, 2, 4})), (Point{Rat(0), Rat(1), Rat(2)}));
  EXPECT_EQ(normalize_projective({Rat(-3), Rat(1, 2)}), (Point{Rat(1), Rat(-1, 6)}));
  EXPECT_THROW(normalize_projective(pt({0, 0, 0})), PreconditionError);
}

TEST(IndependenceRank, Examples) {
  auto gen = independence_rank(condition_matrix(SystemSpec::p2(1), {pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}));
  EXPECT_EQ(gen.rank, 3U);
  EXPECT_TRUE(gen.regular);

  auto col = independence_rank(condition_matrix(SystemSpec::p2(1), {pt({0, 0, 1}), pt({0, 1, 1}), pt({0, 1, 2})}));
  EXPECT_EQ(col.rank, 2U);
  EXPECT_FALSE(col.regular);

  const auto cm = condition_matrix(SystemSpec::p2(3), {pt({0, 0, 1}), pt({0, 1, 1}), pt({1, 0, 1})});
  EXPECT_EQ(cm.matrix.rows(), 3U);
  EXPECT_EQ(cm.matrix.cols(), 10U);
  auto tri = independence_rank(cm);
  EXPECT_EQ(tri.rank, 3U);
  EXPECT_TRUE(tri.regular);
  EXPECT_EQ(tri.tangent_dim, 6);
}

TEST(IndependenceRank, Errors) {
  EXPECT_THROW(condition_matrix(SystemSpec::p2(2), {pt({0, 0, 1}), pt({0, 0, 3})}), PreconditionError);
  EXPECT_THROW(condition_matrix(SystemSpec::p2(2), {pt({0, 1})}), ArityMismatch);
  EXPECT_THROW(condition_matrix(SystemSpec::surface_in_p3(2, 2), {pt({1, 0, 0, 0})}), PreconditionError);
  EXPECT_NO_THROW(condition_matrix(SystemSpec::surface_in_p3(2, 2), {pt({1, 0, 0, 1})}));
}

TEST(IndependenceRank, SurfaceColumnsMatchOracle) {
  for (int h = 2; h <= 4; ++h) {
    for (int d = h - 1; d <= 6; ++d) {
      const auto cm = condition_matrix(SystemSpec::surface_in_p3(h, d), {});
      EXPECT_EQ(static_cast<long>(cm.basis.size()) - 1, restricted_dim_oracle(h, d));
    }
  }
}

TEST(IndependenceRank, SurfacePointsOnQuadric) {
  // x + y + z - w: points (1,0,0,1), (0,1,0,1), (0,0,1,1), (1,1,0,2), (1,-1,0,0).
  const std::vector<Point> pts = {pt({1, 0, 0, 1}), pt({0, 1, 0, 1}), pt({0, 0, 1, 1}), pt({1, 1, 0, 2}),
                                  pt({1, -1, 0, 0})};
  const auto lin = independence_rank(condition_matrix(SystemSpec::surface_in_p3(2, 1), pts));
  // A plane R is a P2; five points of it impose at most 3 conditions on linear forms.
  EXPECT_EQ(lin.rank, 3U);
  EXPECT_FALSE(lin.regular);
  const auto quad = independence_rank(condition_matrix(SystemSpec::surface_in_p3(2, 2), pts));
  EXPECT_EQ(quad.rank, 4U);  // (1,0,0,1), (0,1,0,1), (1,1,0,2), (1,-1,0,0) lie on the line z = 0
}

TEST(IndependenceRankProperty, MatchesMinorSearch) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    const int k = 1 + static_cast<int>(rng() % 4);
    while (static_cast<int>(pts.size()) < k) {
      Point p = {Rat(static_cast<long>(rng() % 5) - 2), Rat(static_cast<long>(rng() % 5) - 2), Rat(1)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    const auto cm = condition_matrix(SystemSpec::p2(1 + static_cast<int>(trial % 2)), pts);
    EXPECT_EQ(independence_rank(cm).rank, minor_search_rank(cm.matrix));
  }
}

TEST(IndependenceRankProperty, RescaleAndPermuteInvariant) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 3);
    std::vector<Point> pts;
    const int k = 2 + static_cast<int>(rng() % 5);
    while (static_cast<int>(pts.size()) < k) {
      Point p = {Rat(static_cast<long>(rng() % 7) - 3), Rat(static_cast<long>(rng() % 7) - 3),
                 Rat(static_cast<long>(rng() % 3))};
      if (std::all_of(p.begin(), p.end(), [](const Rat& x) { return x.is_zero(); })) continue;
      const Point n = normalize_projective(p);
      if (std::none_of(pts.begin(), pts.end(), [&](const Point& q) { return normalize_projective(q) == n; })) {
        pts.push_back(p);
      }
    }
    const auto base = independence_rank(condition_matrix(SystemSpec::p2(d), pts));
    auto moved = pts;
    std::shuffle(moved.begin(), moved.end(), rng);
    for (auto& p : moved) {
      Rat s(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 5) + 1);
      if (rng() % 2) s = -s;
      for (auto& x : p) x *= s;
    }
    const auto other = independence_rank(condition_matrix(SystemSpec::p2(d), moved));
    EXPECT_EQ(base.rank, other.rank);
    EXPECT_EQ(base.regular, other.regular);
    if (base.regular) EXPECT_EQ(base.tangent_dim, linear_system_dim(SystemSpec::p2(d)) - k);
  }
}

TEST(Severi, JsonRoundTrip) {
  for (const auto& s : {SystemSpec::p3(4), SystemSpec::p2(3), SystemSpec::surface_in_p3(3, 4)}) {
    const auto j = system_to_json(s);
    const auto back = system_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.ambient, s.ambient);
    EXPECT_EQ(back.d, s.d);
    EXPECT_EQ(back.h, s.h);
  }
  EXPECT_THROW(system_from_json(Json{{"space", "p5"}, {"d", 2}}), FormatError);
  EXPECT_THROW(system_from_json(Json{{"space", "p3"}}), FormatError);
}
