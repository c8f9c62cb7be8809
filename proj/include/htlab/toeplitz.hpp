#pragma once

#include <string>
#include <vector>

#include "htlab/series.hpp"
#include "json.hpp"

namespace htlab {

/// The q x q matrix T_{q,n}(f) whose (i, j) entry is a_{n+j-i} on and above
/// the diagonal and the conjugate of the mirrored entry below it.
class HermitianToeplitzMatrix {
 public:
  /// Dense row-major entries without structural checks; det() validates.
  HermitianToeplitzMatrix(int q, int n, std::vector<cplx> entries);

  int size() const { return q_; }
  int start_index() const { return n_; }
  const cplx& operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * q_ + j)]; }
  const std::vector<cplx>& entries() const { return entries_; }

  bool is_hermitian(double tol = 1e-12) const;

 private:
  int q_;
  int n_;
  std::vector<cplx> entries_;
};

/// T_{q,n}(f). Requires q >= 1, n >= 1 and coefficients through a_{n+q-1}.
HermitianToeplitzMatrix build(const PowerSeries& f, int q, int n);

/// Determinant by elimination with partial pivoting. Throws StructureError
/// for non-Hermitian input or when the pivot product leaves an imaginary
/// residue above 1e-10.
double det(const HermitianToeplitzMatrix& m);

/// 1 - |a_2|^2
double t2(const PowerSeries& f);
double t2(cplx a2);

/// 2 Re(a_2^2 conj(a_3)) - 2 |a_2|^2 - |a_3|^2 + 1
double t3(const PowerSeries& f);
double t3(cplx a2, cplx a3);

/// Admissible maximum of |a_3 - a_2^2| as a function of x = |a_2|^2,
/// e0 + e1 x.
struct ErrorProfile {
  double e0 = 0.0;
  double e1 = 0.0;

  static ErrorProfile constant(double e) { return {e, 0.0}; }
  static ErrorProfile affine(double e0, double e1) { return {e0, e1}; }
  double operator()(double x) const { return e0 + e1 * x; }
  friend bool operator==(const ErrorProfile&, const ErrorProfile&) = default;
};

/// Coefficient estimates |a_2| <= a2_max, |a_3| <= a3_max and
/// |a_3 - a_2^2| <= E(|a_2|^2) for some class of functions.
struct CoeffBoundProblem {
  double a2_max = 0.0;
  double a3_max = 0.0;
  ErrorProfile e;

  /// Throws DomainError unless both maxima are finite and nonnegative and
  /// E is nonnegative on [0, a2_max^2].
  void validate() const;
  friend bool operator==(const CoeffBoundProblem&, const CoeffBoundProblem&) = default;
};

struct DeterminantBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Where the maximum of the upper-bound parabola was attained.
enum class UpperBranch {
  Vertex,    // t = x = |a_2|^2 inside [0, A3]
  Endpoint,  // vertex right of the range, t = A3
};

struct T3BoundsDetail {
  DeterminantBounds bounds;
  double lo_at_x = 0.0;  // argmin x of (x-1)^2 - E(x)^2
  double hi_at_x = 0.0;  // argmax x of the parabola maximum
  UpperBranch hi_branch = UpperBranch::Vertex;
};

/// Range of T_{3,1} for every function obeying the problem's estimates.
///
/// Lower end: T_3 = (|a_2|^2 - 1)^2 - |a_3 - a_2^2|^2 >= (x - 1)^2 - E(x)^2,
/// minimized over x in [0, A2^2] (a quadratic in x).
///
/// Upper end: T_3 <= -t^2 + 2xt - 2x + 1 with t = |a_3| in [0, A3]. For
/// fixed x the parabola peaks at t = x when x <= A3 and at t = A3 when
/// x > A3; both pieces are extremal at the ends of their x-ranges, so the
/// maximum is taken over a finite candidate set.
T3BoundsDetail t3_bounds_detail(const CoeffBoundProblem& p);
DeterminantBounds t3_bounds(const CoeffBoundProblem& p);

/// T_2 range implied by |a_2| <= A2: [1 - A2^2, 1].
DeterminantBounds t2_bounds(const CoeffBoundProblem& p);

/// Positive root of l^2 (1 + l)(3 + l) = 1 by bisection of [0.4, 0.5] to
/// bracket width <= tol; 0 < tol <= 1e-3.
double lambda0(double tol = 1e-12);

/// Upper T_3 bound for U_s(lambda): max(1, l^2 (1 + l)(3 + l)).
double usub_t3_upper(double lambda);

// Coefficient estimates from the literature for the classes studied.
CoeffBoundProblem problem_univalent();                // S: 2, 3, 1
CoeffBoundProblem problem_usub(double lambda);        // 1+l, 1+l+l^2, l
CoeffBoundProblem problem_convex();                   // 1, 1, (1-x)/3
CoeffBoundProblem problem_g1();                       // 1/2, 1/6, 1/4

struct BoundReport {
  CoeffBoundProblem problem;
  DeterminantBounds bounds;
  bool lambda0_used = false;
};

nlohmann::json to_json(const CoeffBoundProblem& p);
nlohmann::json to_json(const BoundReport& r);

}  // namespace htlab
