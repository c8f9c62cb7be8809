#pragma once

#include <complex>
#include <span>
#include <vector>

namespace htlab {

using cplx = std::complex<double>;

/// Truncated Taylor expansion c_0 + c_1 z + ... + c_N z^N with double
/// precision complex coefficients.
///
/// Every binary operation requires both operands to carry the same order;
/// use resized() to move between orders explicitly. Entries are always
/// finite. For a normalized function f(z) = z + a_2 z^2 + ... the
/// coefficient a_n lives at index n.
class PowerSeries {
 public:
  static constexpr int kDefaultOrder = 32;
  static constexpr int kMaxOrder = 256;

  /// Zero series of the given order.
  explicit PowerSeries(int order = kDefaultOrder);
  /// Takes ownership of c_0..c_N; the order is coeffs.size() - 1.
  explicit PowerSeries(std::vector<cplx> coeffs);

  static PowerSeries constant(cplx c, int order);
  /// The series of f(z) = z.
  static PowerSeries identity(int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  const cplx& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }

  /// c_0 == 0 and c_1 == 1 exactly.
  bool is_normalized() const;

  /// Drops terms above new_order, or pads with zeros up to it.
  PowerSeries resized(int new_order) const;

  PowerSeries& operator+=(const PowerSeries& rhs);
  PowerSeries& operator-=(const PowerSeries& rhs);
  PowerSeries& operator*=(cplx s);

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, cplx s) { return a *= s; }
  friend PowerSeries operator*(cplx s, PowerSeries a) { return a *= s; }
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

 private:
  std::vector<cplx> coeffs_;
};

/// First N+1 Taylor coefficients of numer(z)/denom(z) at the origin.
/// Throws DomainError("pole at origin") when denom[0] == 0.
PowerSeries from_rational(std::span<const cplx> numer, std::span<const cplx> denom, int order);

/// Cauchy product truncated at the common order.
PowerSeries mul(const PowerSeries& a, const PowerSeries& b);

/// r with mul(a, r) == 1 through order N. Requires a[0] != 0.
PowerSeries reciprocal(const PowerSeries& a);

/// n c_n shifted down one place; the order is kept and the top entry is 0.
PowerSeries derivative(const PowerSeries& a);

/// c_n / (n+1) shifted up one place with zero constant term; c_N is
/// dropped so the order is kept.
PowerSeries integrate_from_zero(const PowerSeries& a);

/// exp(a) for a series with a[0] == 0.
PowerSeries exp(const PowerSeries& a);

/// Coefficients of e^{-i theta} f(e^{i theta} z): a_n becomes
/// a_n e^{i (n-1) theta}. f must be normalized.
PowerSeries rotate(const PowerSeries& f, double theta);

/// Multiplication by z^k. The order grows by k.
PowerSeries shift_up(const PowerSeries& a, int k = 1);

/// Division by z^k; the first k coefficients must vanish. The order
/// shrinks by k.
PowerSeries shift_down(const PowerSeries& a, int k = 1);

struct Evaluation {
  cplx value;
  /// max_n |c_n| |z|^{N+1} / (1 - |z|)
  double tail_bound;
};

inline constexpr double kDefaultTrustRadius = 0.99;

/// Horner evaluation of the partial sum. Throws TrustRegionError when
/// |z| > r_max.
Evaluation evaluate(const PowerSeries& f, cplx z, double r_max = kDefaultTrustRadius);

/// The crude tail bound max_n |c_n| r^{N+1} / (1 - r) for |z| = r < 1.
double tail_bound(const PowerSeries& f, double r);

/// Largest r in [0, r_max] at which tail_bound(f, r) <= tol.
double trusted_radius(const PowerSeries& f, double tol, double r_max = kDefaultTrustRadius);

}  // namespace htlab
