#include "htlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "htlab/errors.hpp"

namespace htlab {

namespace {

void check_order(int order) {
  if (order < 1 || order > PowerSeries::kMaxOrder) {
    throw OrderError("truncation order " + std::to_string(order) + " outside [1, " +
                     std::to_string(PowerSeries::kMaxOrder) + "]");
  }
}

void require_same_order(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order()) {
    throw OrderError("order mismatch: " + std::to_string(a.order()) + " vs " +
                     std::to_string(b.order()));
  }
}

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

PowerSeries::PowerSeries(int order) {
  check_order(order);
  coeffs_.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

PowerSeries::PowerSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  check_order(order());
  if (!std::all_of(coeffs_.begin(), coeffs_.end(), finite)) {
    throw DomainError("non-finite series coefficient");
  }
}

PowerSeries PowerSeries::constant(cplx c, int order) {
  PowerSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

PowerSeries PowerSeries::identity(int order) {
  PowerSeries s(order);
  s.coeffs_[1] = 1.0;
  return s;
}

bool PowerSeries::is_normalized() const { return coeffs_[0] == cplx{} && coeffs_[1] == cplx{1.0}; }

PowerSeries PowerSeries::resized(int new_order) const {
  check_order(new_order);
  std::vector<cplx> c(coeffs_);
  c.resize(static_cast<std::size_t>(new_order) + 1, cplx{});
  return PowerSeries(std::move(c));
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += rhs.coeffs_[n];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& rhs) {
  require_same_order(*this, rhs);
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= rhs.coeffs_[n];
  return *this;
}

PowerSeries& PowerSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

PowerSeries from_rational(std::span<const cplx> numer, std::span<const cplx> denom, int order) {
  check_order(order);
  if (denom.empty() || denom[0] == cplx{}) throw DomainError("pole at origin");
  // q_n = (p_n - sum_{k=1..n} d_k q_{n-k}) / d_0
  std::vector<cplx> q(static_cast<std::size_t>(order) + 1);
  for (std::size_t n = 0; n < q.size(); ++n) {
    cplx acc = n < numer.size() ? numer[n] : cplx{};
    for (std::size_t k = 1; k <= n && k < denom.size(); ++k) acc -= denom[k] * q[n - k];
    q[n] = acc / denom[0];
  }
  return PowerSeries(std::move(q));
}

PowerSeries mul(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  const int N = a.order();
  std::vector<cplx> c(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    cplx acc{};
    for (int k = 0; k <= n; ++k) acc += a[k] * b[n - k];
    c[static_cast<std::size_t>(n)] = acc;
  }
  return PowerSeries(std::move(c));
}

PowerSeries reciprocal(const PowerSeries& a) {
  if (a[0] == cplx{}) throw DomainError("reciprocal of a series with zero constant term");
  const cplx one[] = {1.0};
  return from_rational(one, a.coeffs(), a.order());
}

PowerSeries derivative(const PowerSeries& a) {
  const int N = a.order();
  std::vector<cplx> d(static_cast<std::size_t>(N) + 1);
  for (int n = 1; n <= N; ++n) d[static_cast<std::size_t>(n - 1)] = static_cast<double>(n) * a[n];
  return PowerSeries(std::move(d));
}

PowerSeries integrate_from_zero(const PowerSeries& a) {
  const int N = a.order();
  std::vector<cplx> s(static_cast<std::size_t>(N) + 1);
  for (int n = 1; n <= N; ++n) s[static_cast<std::size_t>(n)] = a[n - 1] / static_cast<double>(n);
  return PowerSeries(std::move(s));
}

PowerSeries exp(const PowerSeries& a) {
  if (a[0] != cplx{}) throw DomainError("exp requires a zero constant term");
  const int N = a.order();
  // e' = a' e  =>  n e_n = sum_{k=1..n} k a_k e_{n-k}
  std::vector<cplx> e(static_cast<std::size_t>(N) + 1);
  e[0] = 1.0;
  for (int n = 1; n <= N; ++n) {
    cplx acc{};
    for (int k = 1; k <= n; ++k) acc += static_cast<double>(k) * a[k] * e[static_cast<std::size_t>(n - k)];
    e[static_cast<std::size_t>(n)] = acc / static_cast<double>(n);
  }
  return PowerSeries(std::move(e));
}

PowerSeries rotate(const PowerSeries& f, double theta) {
  if (!f.is_normalized()) throw DomainError("rotate requires a normalized series");
  std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
  for (int n = 2; n <= f.order(); ++n) {
    c[static_cast<std::size_t>(n)] *= std::polar(1.0, (n - 1) * theta);
  }
  return PowerSeries(std::move(c));
}

PowerSeries shift_up(const PowerSeries& a, int k) {
  std::vector<cplx> c(static_cast<std::size_t>(k), cplx{});
  c.insert(c.end(), a.coeffs().begin(), a.coeffs().end());
  return PowerSeries(std::move(c));
}

PowerSeries shift_down(const PowerSeries& a, int k) {
  for (int n = 0; n < k; ++n) {
    if (a[n] != cplx{}) throw DomainError("shift_down would drop a nonzero coefficient");
  }
  return PowerSeries(std::vector<cplx>(a.coeffs().begin() + k, a.coeffs().end()));
}

double tail_bound(const PowerSeries& f, double r) {
  if (r >= 1.0) return HUGE_VAL;
  double cmax = 0.0;
  for (const auto& c : f.coeffs()) cmax = std::max(cmax, std::abs(c));
  return cmax * std::pow(r, f.order() + 1) / (1.0 - r);
}

Evaluation evaluate(const PowerSeries& f, cplx z, double r_max) {
  const double r = std::abs(z);
  if (r > r_max) {
    throw TrustRegionError("|z| = " + std::to_string(r) + " beyond trust radius " + std::to_string(r_max));
  }
  cplx acc{};
  for (int n = f.order(); n >= 0; --n) acc = acc * z + f[n];
  return {acc, tail_bound(f, r)};
}

double trusted_radius(const PowerSeries& f, double tol, double r_max) {
  if (tail_bound(f, r_max) <= tol) return r_max;
  // tail_bound is increasing in r
  double lo = 0.0;
  double hi = r_max;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (tail_bound(f, mid) <= tol ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace htlab
