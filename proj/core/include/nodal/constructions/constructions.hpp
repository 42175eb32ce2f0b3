#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nodal/core/json_io.hpp"
#include "nodal/core/poly.hpp"
#include "nodal/core/verdict.hpp"
#include "nodal/singularities/singularities.hpp"

namespace nodal::cons {

inline constexpr int kDefaultRetries = 32;
/// Random coefficients are integers in [-kCoeffBound, kCoeffBound].
inline constexpr long kCoeffBound = 9;

class GenericityFailure : public Error {
 public:
  using Error::Error;
};

/// Lines in P2 (linear forms in x, y, z) and their pairwise intersections.
struct LineArrangement {
  std::vector<MultiPoly> lines;
  /// Node of lines i < j, in pair order, first nonzero coordinate 1.
  std::vector<Point> nodes;

  /// Throws PreconditionError unless the lines are nonzero linear forms in
  /// 3 variables, pairwise non-proportional and with no three concurrent.
  static LineArrangement from_lines(std::vector<MultiPoly> lines);

  [[nodiscard]] MultiPoly product() const;
};

/// Why a line set is not general, or nullopt if it is.
std::optional<std::string> arrangement_defect(const std::vector<MultiPoly>& lines);

/// k >= 2 seeded random lines with coefficients in [-9, 9]; redraws until
/// the arrangement is general. Throws GenericityFailure naming seed and budget.
LineArrangement general_lines(int k, std::uint64_t seed, int retries = kDefaultRetries);

/// {x, y, x + y - z}: nodes [0:0:1], [0:1:1], [1:0:1].
LineArrangement canonical_triangle();

/// phi1(xi) + s * phi2(xi) in chart coordinates (s, v, w), where xi sets
/// coordinate `chart_var` of (x, y, z) to 1 and the other two to v, w.
/// Equals (phi1 + phi2)(s * xi) / s^(d-1) for forms of degrees d-1 and d.
MultiPoly blowup_chart(const MultiPoly& phi1, const MultiPoly& phi2, std::size_t chart_var);

/// Affine chart (r, v, w) of a form in (x, y, z, t), with r = t.
MultiPoly b_chart(const MultiPoly& sB, std::size_t chart_var);

/// (v, w) coordinates of a projective point of R in the chart.
Point chart_point(const Point& p, std::size_t chart_var);

struct SurfaceWitness {
  int d = 0;
  std::uint64_t seed = 0;
  /// Blow-up chart coordinate of (x, y, z) set to 1.
  std::size_t chart_var = 0;
  LineArrangement arrangement;
  MultiPoly phi1{3};
  MultiPoly phi2{3};
  /// w * phi1 + phi2 in (x, y, z, w); q = [0:0:0:1].
  MultiPoly projective_equation{4};
  MultiPoly blowup_chart_A{3};
  /// phi1 + t * psi in (x, y, z, t), degree d - 1 in B.
  MultiPoly sB_equation{4};
};

/// Chart variable in which every node has a nonzero coordinate, preferring x.
std::optional<std::size_t> visible_chart(const std::vector<Point>& nodes);

/// Lowest degree of the affine equation phi1 + phi2 at q.
int multiplicity_at_q(const SurfaceWitness& w);

/// Assembles a witness from explicit parts without retrying. Throws
/// GenericityFailure when phi2 or psi vanishes at a node of C or no chart
/// sees every node; PreconditionError on degree mismatches.
SurfaceWitness witness_from_parts(const LineArrangement& lines, const MultiPoly& phi2, const MultiPoly& psi,
                                  std::uint64_t seed = 0);

/// Seeded construction for d >= 3, redrawing up to `retries` times.
SurfaceWitness theorem42_witness(int d, std::uint64_t seed, int retries = kDefaultRetries);

/// Witness over a fixed arrangement of d - 1 lines with seeded phi2, psi.
SurfaceWitness witness_over(const LineArrangement& lines, std::uint64_t seed, int retries = kDefaultRetries);

/// S0 = S_A u S_B in the charts (s, v, w) and (r, v, w), claimed T1 points
/// at the arrangement nodes. Throws GluingMismatch if the charts disagree on R.
sing::S0Spec central_fibre(const SurfaceWitness& w);

struct StageCertificate {
  std::string stage;
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;
  Json data;
};

struct CertificateBundle {
  std::vector<StageCertificate> stages;
  Verdict verdict = Verdict::Inconclusive;
  /// First Refuted stage, else first Inconclusive stage, else empty.
  std::string failing_stage;
};

struct CertifyOptions {
  std::optional<int> degree_cap;
  /// Modular pre-filter for the smoothness stage; nullopt runs exact only.
  std::optional<std::uint64_t> prefilter_prime = kDefaultPrime;
};

/// Stages in order: construction, gluing, nodes, T1, smoothness, regularity.
CertificateBundle certify_witness(const SurfaceWitness& w, const CertifyOptions& opts = {});

/// { "d", "seed", "chart_var", "lines", "phi1", "phi2", "sB", "chartA", "nodes" }.
Json witness_to_json(const SurfaceWitness& w);
/// Reads the stored polynomials as given (no recomputation), so tampered
/// files certify as they are. Throws FormatError on schema errors.
SurfaceWitness witness_from_json(const Json& j);

Json to_json(const CertificateBundle& b);

}  // namespace nodal::cons
