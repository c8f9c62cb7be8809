#include "htlab/toeplitz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "htlab/errors.hpp"

namespace htlab {

HermitianToeplitzMatrix::HermitianToeplitzMatrix(int q, int n, std::vector<cplx> entries)
    : q_(q), n_(n), entries_(std::move(entries)) {
  if (q < 1 || n < 1) throw DomainError("Toeplitz matrix needs q >= 1 and n >= 1");
  if (entries_.size() != static_cast<std::size_t>(q) * static_cast<std::size_t>(q)) {
    throw DomainError("Toeplitz matrix entry count does not match q*q");
  }
}

bool HermitianToeplitzMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < q_; ++i) {
    for (int j = i; j < q_; ++j) {
      const cplx a = (*this)(i, j);
      const cplx b = std::conj((*this)(j, i));
      if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
    }
  }
  return true;
}

HermitianToeplitzMatrix build(const PowerSeries& f, int q, int n) {
  if (q < 1 || n < 1) throw DomainError("Toeplitz matrix needs q >= 1 and n >= 1");
  if (n + q - 1 > f.order()) {
    throw OrderError("T_{" + std::to_string(q) + "," + std::to_string(n) + "} needs a_" +
                     std::to_string(n + q - 1) + " but the series stops at order " +
                     std::to_string(f.order()));
  }
  std::vector<cplx> e(static_cast<std::size_t>(q * q));
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      const cplx a = f[n + std::abs(j - i)];
      e[static_cast<std::size_t>(i * q + j)] = j >= i ? a : std::conj(a);
    }
  }
  return HermitianToeplitzMatrix(q, n, std::move(e));
}

double det(const HermitianToeplitzMatrix& m) {
  if (!m.is_hermitian()) throw StructureError("determinant requested for a non-Hermitian matrix");
  const int q = m.size();
  std::vector<cplx> a = m.entries();
  auto at = [&](int i, int j) -> cplx& { return a[static_cast<std::size_t>(i * q + j)]; };

  cplx d = 1.0;
  for (int k = 0; k < q; ++k) {
    int piv = k;
    for (int i = k + 1; i < q; ++i) {
      if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
    }
    if (at(piv, k) == cplx{}) return 0.0;
    if (piv != k) {
      for (int j = 0; j < q; ++j) std::swap(at(k, j), at(piv, j));
      d = -d;
    }
    d *= at(k, k);
    for (int i = k + 1; i < q; ++i) {
      const cplx factor = at(i, k) / at(k, k);
      for (int j = k + 1; j < q; ++j) at(i, j) -= factor * at(k, j);
    }
  }
  if (std::abs(d.imag()) > 1e-10 * std::max(1.0, std::abs(d.real()))) {
    throw StructureError("pivot product has imaginary part " + std::to_string(d.imag()));
  }
  return d.real();
}

double t2(cplx a2) { return 1.0 - std::norm(a2); }

double t2(const PowerSeries& f) {
  if (f.order() < 2) throw OrderError("t2 needs a_2");
  return t2(f[2]);
}

double t3(cplx a2, cplx a3) {
  return 2.0 * (a2 * a2 * std::conj(a3)).real() - 2.0 * std::norm(a2) - std::norm(a3) + 1.0;
}

double t3(const PowerSeries& f) {
  if (f.order() < 3) throw OrderError("t3 needs a_3");
  return t3(f[2], f[3]);
}

void CoeffBoundProblem::validate() const {
  if (!std::isfinite(a2_max) || !std::isfinite(a3_max) || a2_max < 0.0 || a3_max < 0.0) {
    throw DomainError("coefficient bounds must be finite and nonnegative");
  }
  if (!std::isfinite(e.e0) || !std::isfinite(e.e1)) throw DomainError("error profile must be finite");
  // E is affine, so checking the ends of [0, A2^2] suffices.
  if (e(0.0) < 0.0 || e(a2_max * a2_max) < 0.0) {
    throw DomainError("error profile negative on [0, A2^2]");
  }
}

T3BoundsDetail t3_bounds_detail(const CoeffBoundProblem& p) {
  p.validate();
  const double X = p.a2_max * p.a2_max;
  const double A3 = p.a3_max;
  T3BoundsDetail out;

  // (x-1)^2 - (e0 + e1 x)^2 = c2 x^2 + c1 x + c0
  const double c2 = 1.0 - p.e.e1 * p.e.e1;
  const double c1 = -2.0 * (1.0 + p.e.e0 * p.e.e1);
  auto lower = [&](double x) {
    const double ex = p.e(x);
    return (x - 1.0) * (x - 1.0) - ex * ex;
  };
  std::vector<double> lo_candidates = {0.0, X};
  if (c2 > 0.0) {
    const double stationary = -c1 / (2.0 * c2);
    if (stationary > 0.0 && stationary < X) lo_candidates.push_back(stationary);
  }
  out.bounds.lo = lower(0.0);
  for (double x : lo_candidates) {
    if (lower(x) < out.bounds.lo) {
      out.bounds.lo = lower(x);
      out.lo_at_x = x;
    }
  }

  auto upper = [&](double x) {
    if (x <= A3) return (x - 1.0) * (x - 1.0);
    return -A3 * A3 + 2.0 * x * A3 - 2.0 * x + 1.0;
  };
  const std::array<double, 4> hi_candidates = {0.0, std::min(1.0, X), std::min(A3, X), X};
  out.bounds.hi = upper(0.0);
  for (double x : hi_candidates) {
    if (upper(x) > out.bounds.hi) {
      out.bounds.hi = upper(x);
      out.hi_at_x = x;
    }
  }
  out.hi_branch = out.hi_at_x > A3 ? UpperBranch::Endpoint : UpperBranch::Vertex;
  return out;
}

DeterminantBounds t3_bounds(const CoeffBoundProblem& p) { return t3_bounds_detail(p).bounds; }

DeterminantBounds t2_bounds(const CoeffBoundProblem& p) {
  p.validate();
  return {1.0 - p.a2_max * p.a2_max, 1.0};
}

namespace {
double lambda0_residual(double l) { return l * l * (1.0 + l) * (3.0 + l) - 1.0; }
}  // namespace

double lambda0(double tol) {
  if (!(tol > 0.0 && tol <= 1e-3)) throw DomainError("lambda0 tolerance must lie in (0, 1e-3]");
  double lo = 0.4;
  double hi = 0.5;
  if (!(lambda0_residual(lo) < 0.0 && lambda0_residual(hi) > 0.0)) {
    throw std::logic_error("lambda0 bracket [0.4, 0.5] lost its sign change");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (lambda0_residual(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double usub_t3_upper(double lambda) {
  return std::max(1.0, lambda * lambda * (1.0 + lambda) * (3.0 + lambda));
}

CoeffBoundProblem problem_univalent() { return {2.0, 3.0, ErrorProfile::constant(1.0)}; }

CoeffBoundProblem problem_usub(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
  return {1.0 + lambda, 1.0 + lambda + lambda * lambda, ErrorProfile::constant(lambda)};
}

CoeffBoundProblem problem_convex() { return {1.0, 1.0, ErrorProfile::affine(1.0 / 3.0, -1.0 / 3.0)}; }

CoeffBoundProblem problem_g1() { return {0.5, 1.0 / 6.0, ErrorProfile::constant(0.25)}; }

nlohmann::json to_json(const CoeffBoundProblem& p) {
  return {{"A2", p.a2_max}, {"A3", p.a3_max}, {"E", {{"e0", p.e.e0}, {"e1", p.e.e1}}}};
}

nlohmann::json to_json(const BoundReport& r) {
  return {{"problem", to_json(r.problem)},
          {"lo", r.bounds.lo},
          {"hi", r.bounds.hi},
          {"lambda0_used", r.lambda0_used}};
}

}  // namespace htlab
