#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htlab/analytic.hpp"
#include "htlab/series.hpp"
#include "json.hpp"

namespace htlab {

enum class ClassKind {
  Starlike,  // Re zf'/f > alpha
  Convex,    // Re (1 + zf''/f') > alpha
  U,         // |(z/f)^2 f' - 1| < lambda
  USub,      // U(lambda) with f/z subordinate to 1/((1+z)(1+lambda z))
  G,         // Re (1 + zf''/f') < 1 + delta/2
};

struct ClassSpec {
  ClassKind kind = ClassKind::Starlike;
  double param = 0.0;

  static ClassSpec starlike(double alpha = 0.0) { return {ClassKind::Starlike, alpha}; }
  static ClassSpec convex(double alpha = 0.0) { return {ClassKind::Convex, alpha}; }
  static ClassSpec u(double lambda = 1.0) { return {ClassKind::U, lambda}; }
  static ClassSpec usub(double lambda = 1.0) { return {ClassKind::USub, lambda}; }
  static ClassSpec g(double delta = 1.0) { return {ClassKind::G, delta}; }

  /// Throws DomainError unless alpha in [0,1), lambda in (0,1] or
  /// delta in (0,1] as the kind requires.
  void validate() const;
  std::string name() const;
  friend bool operator==(const ClassSpec&, const ClassSpec&) = default;
};

/// Accepts the names produced by ClassSpec::name(): s-star, convex, u,
/// u-sub, g.
ClassKind parse_class_kind(std::string_view name);
std::string to_string(ClassKind kind);

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

struct MembershipVerdict {
  Status status = Status::Inconclusive;
  /// Smallest value of the defining functional over the grid (for
  /// subordination: the smallest clearance between a test point and the
  /// superordinate boundary curve).
  double margin = 0.0;
  /// Point of the disc where the condition fails.
  std::optional<cplx> witness;
  std::string detail;
};

/// Circles |z| = radii[k], each sampled at `angles` uniformly spaced
/// points starting at angle 0.
struct Grid {
  std::vector<double> radii;
  int angles = 720;

  static Grid geometric(int count, double r_min, double r_max, int angles);
  /// 64 radii geometric from 0.1 to 0.99, 720 angles.
  static Grid defaults();

  double outer_radius() const;
  /// Radii not exceeding r_max.
  Grid clipped(double r_max) const;
};

struct SubordinationOptions {
  double r = 0.9;     // test points F(z) for |z| <= r
  double rho = 0.99;  // boundary curve G(rho e^{it})
  int test_radii = 8;
  int test_angles = 720;
  int curve_samples = 4096;
  double tolerance = 1e-7;
};

struct MembershipOptions {
  double tolerance = 1e-7;
  /// |f| or |f'| below this at a grid point is reported as a zero.
  double zero_guard = 1e-12;
  SubordinationOptions subordination;
};

using ComplexMap = std::function<cplx(cplx)>;

/// Necessary-condition membership oracle: evaluates the class functional
/// on the grid and requires it to exceed the tolerance everywhere. A PASS
/// certifies the inequality only on the sampled radii, never on the whole
/// disc. For series input, an outermost radius whose crude tail bound
/// exceeds the tolerance makes the verdict INCONCLUSIVE.
MembershipVerdict check_membership(const PowerSeries& f, const ClassSpec& spec,
                                   const Grid& grid = Grid::defaults(),
                                   const MembershipOptions& opts = {});
MembershipVerdict check_membership(const RationalFunction& f, const ClassSpec& spec,
                                   const Grid& grid = Grid::defaults(),
                                   const MembershipOptions& opts = {});

/// Largest sub-grid of `base` on which the series needed by `spec`
/// (f, f', f'') all have crude tail bounds within tol.
Grid trusted_grid(const PowerSeries& f, const ClassSpec& spec, const Grid& base, double tol);

/// Image-containment surrogate for F < G with G univalent: every test
/// point F(z), |z| <= r, must have winding number 1 with respect to the
/// closed curve G(rho e^{it}). Winding 0 at a point clear of the curve is
/// a FAIL; any other winding (a self-intersecting sampled curve) or a test
/// point closer to the curve than its chord deviation is INCONCLUSIVE.
/// Throws DomainError unless |F(0) - G(0)| <= 1e-10 and 0 < r < rho < 1.
MembershipVerdict subordination_check(const ComplexMap& F, const ComplexMap& G,
                                      const SubordinationOptions& opts = {});
/// Series F is evaluated by Horner; a tail bound that reaches a test
/// point's clearance makes the verdict INCONCLUSIVE.
MembershipVerdict subordination_check(const PowerSeries& F, const ComplexMap& G,
                                      const SubordinationOptions& opts = {});

/// 1 / ((1 + z)(1 + lambda z))
cplx usub_superordinate(double lambda, cplx z);

/// Winding number of the closed polygon through `vertices` (last vertex
/// joins the first) around w. w must not lie on the polygon.
int winding_number(std::span<const cplx> vertices, cplx w);

nlohmann::json to_json(const MembershipVerdict& v, const ClassSpec& spec, const Grid& grid);

}  // namespace htlab
