#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nodal/core/json_io.hpp"
#include "nodal/core/matrix.hpp"
#include "nodal/core/poly.hpp"
#include "nodal/singularities/singularities.hpp"

namespace nodal::degen {

/// Class a*sigma + b*f on P1 x P1, with sigma^2 = f^2 = 0 and sigma.f = 1.
struct DivisorClassF0 {
  long a = 0;
  long b = 0;

  static DivisorClassF0 sigma() { return {1, 0}; }
  static DivisorClassF0 fibre() { return {0, 1}; }

  friend DivisorClassF0 operator+(DivisorClassF0 x, DivisorClassF0 y) { return {x.a + y.a, x.b + y.b}; }
  friend DivisorClassF0 operator-(DivisorClassF0 x, DivisorClassF0 y) { return {x.a - y.a, x.b - y.b}; }
  friend DivisorClassF0 operator-(DivisorClassF0 x) { return {-x.a, -x.b}; }
  friend DivisorClassF0 operator*(long k, DivisorClassF0 x) { return {k * x.a, k * x.b}; }
  friend bool operator==(DivisorClassF0, DivisorClassF0) = default;

  /// "-σ - f" style rendering.
  [[nodiscard]] std::string str() const;
};

long intersect(DivisorClassF0 x, DivisorClassF0 y);

/// e = Θ|_E and E''|_E on the exceptional quadric, with the checks that fix them.
struct ChowF0Record {
  DivisorClassF0 e;
  DivisorClassF0 theta_restr;
  DivisorClassF0 epp_restr;
  long f_dot_e = 0;
  long e_squared = 0;
  /// -c1 of O(-1) + O(-1), the normal-bundle route to e^2.
  long e_squared_normal_bundle = 0;
  /// Determinant of the linear system in (a, b) after solving f.e first.
  long system_det = 0;
  std::vector<std::string> transcript;
};

/// Solves f.e = -1, e^2 = 2 for e and derives E''|_E from 2f + Θ|_E + E''|_E = 0.
/// Throws Error if the constraint system is inconsistent or not unique.
ChowF0Record chow_f0_identities();

struct ThetaRestriction {
  long fibre_coeff = 0;
  long e_coeff = 0;
  bool effective = false;
};

/// (2m - 2) f + m E. Throws PreconditionError for m < 0.
ThetaRestriction theta_restriction_class(long m_F);

/// Smallest m >= 0 with an effective class.
long minimal_effective_mF();

Json to_json(const ChowF0Record& r);

/// Fibre xy = t of the local family, cut by x - y - alpha = z^2 + u^2 with
/// alpha^2 = -4t, in chart coordinates (y, z, u).
struct FamilySlice {
  Rat t;
  Rat alpha;
  MultiPoly surface_chart{3};
};

/// Slice with alpha = sign * sqrt(-4t); nullopt when -4t is not a rational
/// square. Throws PreconditionError for t = 0 or sign not +-1.
std::optional<FamilySlice> deformation_slice(const Rat& t, int sign = 1);

/// (-alpha/2, 0, 0) in chart coordinates.
Point predicted_node(const FamilySlice& s);

struct NodeCheck {
  FamilySlice slice;
  sing::SingularityReport report;
  /// Degree-2 part of the chart equation recentred at the predicted node.
  MultiPoly tangent_cone{3};
  /// 2Y^2 - alpha z^2 - alpha u^2 with Y the recentred y.
  MultiPoly expected_cone{3};
  std::optional<Rat> cone_scalar;
  /// NodeA1 and cone matches.
  bool verified = false;
};

/// Throws PreconditionError for t = 0 and NoRationalSlice when -4t is not a square.
NodeCheck verify_t1_to_node(const Rat& t, int sign = 1);

class NoRationalSlice : public Error {
 public:
  using Error::Error;
};

Json to_json(const NodeCheck& c);

struct HessianLimit {
  RatMatrix b0;
  Rat det_b0;
  /// ac - b^2/4 for p2(0,0,z,u) = a z^2 + b zu + c u^2.
  Rat disc;
  bool verified = false;
};

/// Limit matrix B0 from the second partials of p(x,y,z,u) at the origin,
/// compared with the discriminant of its (z,u) quadratic part. Throws
/// PreconditionError unless p(0) = 0 and p_x(0) = p_y(0) = 1.
HessianLimit hessian_limit_check(const MultiPoly& p);

/// Convention label written into reports.
inline constexpr const char* kDiscConvention = "disc(a z^2 + b zu + c u^2) = ac - b^2/4";

Json to_json(const HessianLimit& h);

/// Scalar c with a = c * b, if any (both nonzero).
std::optional<Rat> proportionality(const MultiPoly& a, const MultiPoly& b);

}  // namespace nodal::degen
