#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/core/json_io.hpp"
#include "nodal/core/matrix.hpp"
#include "nodal/core/poly.hpp"

namespace nodal::severi {

enum class Ambient { P3, P2, SurfaceInP3 };

std::string to_string(Ambient a);

/// A complete linear system: degree-d forms on P3 or P2, or degree-d forms
/// restricted to a surface R = {g_R = 0} of degree h - 1 in P3.
struct SystemSpec {
  Ambient ambient = Ambient::P3;
  int d = 0;
  /// SurfaceInP3 only.
  int h = 0;
  /// SurfaceInP3 only; homogeneous of degree h - 1 in 4 variables.
  std::optional<MultiPoly> g_R;

  static SystemSpec p3(int d);
  static SystemSpec p2(int d);
  static SystemSpec surface_in_p3(int h, int d, std::optional<MultiPoly> g_R = std::nullopt);

  /// Number of homogeneous coordinates of the ambient space.
  [[nodiscard]] std::size_t coords() const { return ambient == Ambient::P2 ? 3 : 4; }

  /// Throws PreconditionError on negative degrees, h < 2, d < h - 1 or a bad g_R.
  void validate() const;
};

/// C(n, k), zero when n < k or n < 0.
long binomial(long n, long k);

/// Projective dimension. SurfaceInP3 uses C(d+3,3) - C(d-h+1,3) - 1.
long linear_system_dim(const SystemSpec& spec);

/// Degree h - 1 surface used when none is supplied: sum of x_i^(h-1) over
/// x, y, z minus w^(h-1).
MultiPoly default_surface(int h);

/// Projective dimension of degree-d forms modulo g_R, from the rank of
/// multiplication by g_R on degree d - h + 1 forms. Throws PreconditionError
/// unless d >= h - 1 >= 1 and g_R is a nonzero form of degree h - 1.
long restricted_dim_oracle(int h, int d, const std::optional<MultiPoly>& g_R = std::nullopt);

/// C(d-1, 2) on P3; linear_system_dim on SurfaceInP3; nullopt on P2.
/// Throws PreconditionError for P3 with d < 2 or an invalid spec.
std::optional<long> max_regular_delta(const SystemSpec& spec);

/// floor(dim / 4). Conjectural lower bound, informational only.
long heuristic_floor(const SystemSpec& spec);

/// Scales so the first nonzero coordinate is 1. Throws PreconditionError
/// for the zero vector.
Point normalize_projective(const Point& p);

struct ConditionMatrix {
  SystemSpec system;
  std::vector<Point> points;
  /// Column labels: degree-d monomials, reduced modulo LM(g_R) on a surface.
  std::vector<Monomial> basis;
  /// One row per point.
  RatMatrix matrix;
};

/// Normalizes the points and evaluates the monomial basis at them. Throws
/// PreconditionError on duplicates, wrong coordinate count, or a point off R.
ConditionMatrix condition_matrix(const SystemSpec& spec, const std::vector<Point>& points);

struct Independence {
  std::size_t rank = 0;
  bool regular = false;
  /// Dimension of the system through the points: (columns - 1) - rank.
  long tangent_dim = 0;
};

Independence independence_rank(const ConditionMatrix& cm);

SystemSpec system_from_json(const Json& j);
Json system_to_json(const SystemSpec& s);
Json to_json(const Independence& r, const ConditionMatrix& cm);

}  // namespace nodal::severi
