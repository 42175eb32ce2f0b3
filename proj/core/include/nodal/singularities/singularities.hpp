#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/core/groebner.hpp"
#include "nodal/core/json_io.hpp"
#include "nodal/core/matrix.hpp"
#include "nodal/core/poly.hpp"
#include "nodal/core/verdict.hpp"

namespace nodal::sing {

/// Coordinate system of a local equation.
struct LocalChart {
  std::vector<std::string> var_names;
  std::string note;

  /// Throws PreconditionError when names repeat.
  LocalChart(std::vector<std::string> names, std::string note = {});
  [[nodiscard]] std::size_t arity() const { return var_names.size(); }

  static LocalChart standard(std::size_t arity, std::string note = {});
};

enum class PointClass { Smooth, NodeA1, T1, DegenerateCritical, Refuted };

std::string to_string(PointClass c);

/// Exact data a classification was read from.
struct Witness {
  Rat value;
  std::vector<Rat> gradient;
  std::optional<RatMatrix> hessian;
  std::optional<Rat> hessian_det;
};

struct SingularityReport {
  Point point;
  PointClass kind = PointClass::Refuted;
  /// Meaningful for DegenerateCritical and NodeA1/T1 (full rank).
  std::size_t hessian_rank = 0;
  /// Failing condition for Refuted.
  std::string reason;
  Witness witness;

  [[nodiscard]] bool is(PointClass c) const { return kind == c; }
};

/// { "point": [...], "class": "NodeA1", "hessian_det": "8", "all_exact": true, ... }
Json to_json(const SingularityReport& r);

/// Classifies q on the surface f = 0 in a 3-variable chart: Smooth when the
/// gradient is nonzero, NodeA1 when it vanishes and the Hessian has rank 3,
/// otherwise DegenerateCritical(rank). Throws PreconditionError when
/// f(q) != 0 or the arity is not 3.
SingularityReport classify_point(const MultiPoly& f, const LocalChart& chart, const Point& q);

/// Same test for a plane curve g = 0 (arity 2): NodeA1 here means an
/// ordinary double point.
SingularityReport classify_curve_point(const MultiPoly& g, const Point& q);

/// Central fibre S0 = S_A u S_B in two local charts. In each chart the
/// double surface R is {first variable = 0} and the remaining two variables
/// are the shared coordinates (z, u) on R.
struct S0Spec {
  MultiPoly gA{3};
  MultiPoly gB{3};
  LocalChart chartA = LocalChart::standard(3);
  LocalChart chartB = LocalChart::standard(3);
  std::vector<Point> claimed_T1;
  std::vector<Point> claimed_nodes_A;
  std::vector<Point> claimed_nodes_B;
};

class GluingMismatch : public Error {
 public:
  using Error::Error;
};

/// Equation of C = S_A n R in the (z, u) coordinates, from the A side.
MultiPoly restriction_to_R(const MultiPoly& g);

/// The scalar lambda with gA|_R = lambda * gB|_R, or nullopt if none exists.
std::optional<Rat> gluing_scalar(const S0Spec& spec);

/// { "gA": poly, "gB": poly, "claimed_T1": [[z, u], ...] } plus optional
/// "chartA", "chartB" (variable names) and "claimed_nodes_A", "claimed_nodes_B".
/// Throws FormatError on schema errors; does not validate gluing.
S0Spec s0_spec_from_json(const Json& j);
Json s0_spec_to_json(const S0Spec& s);

/// Throws GluingMismatch when the restrictions disagree and
/// PreconditionError when claimed point lists overlap or have wrong length.
void validate(const S0Spec& spec);

/// T1 iff S_A and S_B are smooth at p and C has an ordinary node at p;
/// otherwise Refuted naming the failing condition. p is a point (z, u) of R.
/// Throws PreconditionError if p is not on C, GluingMismatch if the charts
/// disagree on R.
SingularityReport certify_t1(const S0Spec& spec, const Point& p);

struct NodeSetReport {
  std::vector<SingularityReport> reports;
  bool all_nodes = true;
};

/// classify_point on each point; points must be pairwise distinct.
NodeSetReport certify_node_set(const MultiPoly& f, const LocalChart& chart, const std::vector<Point>& points);

struct ExclusionResult {
  Verdict verdict = Verdict::Inconclusive;
  /// Rational singular points that were extracted, when extraction ran.
  std::vector<Point> singular_points;
  /// Groebner basis (or partial basis) of the singular-locus ideal.
  std::vector<MultiPoly> residual;
  std::string detail;
};

struct ExclusionOptions {
  std::optional<int> degree_cap;
  std::optional<std::uint64_t> prefilter_prime = kDefaultPrime;
};

/// Certified iff the singular locus of f = 0 in this chart is exactly the
/// `allowed` point set; Refuted when it provably differs; Inconclusive when
/// the Groebner computation hits the degree cap or the points cannot be
/// extracted over Q.
ExclusionResult exclude_extra_singularities(const MultiPoly& f, const LocalChart& chart,
                                            const std::vector<Point>& allowed,
                                            const ExclusionOptions& opts = {});

/// Points of a zero-dimensional ideal given by a Groebner basis, when all of
/// them are rational and reachable by successive univariate elimination.
/// `complete` is false when some coordinate polynomial has irrational roots
/// or coefficients too large to search for rational roots.
struct RationalSolutions {
  std::vector<Point> points;
  bool complete = false;
};
RationalSolutions rational_points(const std::vector<MultiPoly>& groebner_basis,
                                  const GroebnerOptions& opts = {});

/// Dimension over Q of Q[x]/I for a zero-dimensional Groebner basis;
/// nullopt when the ideal is not zero-dimensional.
std::optional<std::size_t> quotient_dimension(const std::vector<MultiPoly>& groebner_basis);

}  // namespace nodal::sing
