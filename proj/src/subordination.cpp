#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "htlab/classes.hpp"
#include "htlab/errors.hpp"

namespace htlab {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

double segment_distance2(cplx a, cplx b, cplx w) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::norm(w - a);
  const double t = std::clamp(((w - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::norm(w - (a + t * ab));
}

struct TestValue {
  cplx value;
  double tail;
};

template <class FEval>
MembershipVerdict subordinate_impl(FEval&& F, const ComplexMap& G, const SubordinationOptions& o) {
  if (!(o.r > 0.0 && o.r < o.rho && o.rho < 1.0)) throw DomainError("subordination needs 0 < r < rho < 1");
  if (o.test_radii < 1 || o.test_angles < 3 || o.curve_samples < 3) {
    throw DomainError("subordination grid too small");
  }
  if (std::abs(F(cplx{}).value - G(cplx{})) > 1e-10) throw DomainError("F(0) differs from G(0)");

  // Boundary polygon and, per edge, how far the true arc strays from the
  // chord at its midpoint.
  const auto M = static_cast<std::size_t>(o.curve_samples);
  const double dt = 2.0 * std::numbers::pi / static_cast<double>(M);
  std::vector<cplx> curve(M);
  std::vector<double> sag(M);
  for (std::size_t k = 0; k < M; ++k) curve[k] = G(std::polar(o.rho, dt * static_cast<double>(k)));
  for (std::size_t k = 0; k < M; ++k) {
    const cplx mid = G(std::polar(o.rho, dt * (static_cast<double>(k) + 0.5)));
    sag[k] = std::abs(mid - 0.5 * (curve[k] + curve[(k + 1) % M]));
  }

  MembershipVerdict v;
  v.margin = std::numeric_limits<double>::infinity();
  bool tangled = false;
  bool borderline = false;
  std::optional<cplx> outside;
  const double da = 2.0 * std::numbers::pi / o.test_angles;
  for (int i = 1; i <= o.test_radii; ++i) {
    const double r = o.r * i / o.test_radii;
    for (int m = 0; m < o.test_angles; ++m) {
      const cplx z = std::polar(r, da * m);
      const TestValue w = F(z);
      // min over edges of (distance - sag); the square root is only taken
      // for edges that can still lower the running minimum
      double clearance = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < M; ++k) {
        const double d2 = segment_distance2(curve[k], curve[(k + 1) % M], w.value);
        const double reach = clearance + sag[k];
        if (reach > 0.0 && d2 >= reach * reach) continue;
        clearance = std::min(clearance, std::sqrt(d2) - sag[k]);
      }
      clearance -= w.tail;
      if (clearance <= o.tolerance) {
        borderline = true;
        v.margin = std::min(v.margin, clearance);
        continue;
      }
      const int wn = winding_number(curve, w.value);
      if (wn == 1) {
        v.margin = std::min(v.margin, clearance);
      } else if (wn == 0) {
        v.margin = std::min(v.margin, -clearance);
        if (!outside) outside = z;
      } else {
        tangled = true;
      }
    }
  }

  if (tangled) {
    v.status = Status::Inconclusive;
    v.detail = "boundary curve self-intersects at the sampled resolution";
  } else if (outside) {
    v.status = Status::Fail;
    v.witness = outside;
    v.detail = "F(z) lies outside G(rho D)";
  } else if (borderline) {
    v.status = Status::Inconclusive;
    v.detail = "test point within chord deviation of the boundary curve";
  } else {
    v.status = Status::Pass;
  }
  return v;
}

}  // namespace

int winding_number(std::span<const cplx> vertices, cplx w) {
  int wn = 0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = vertices[k];
    const cplx b = vertices[(k + 1) % n];
    const double side = cross(b - a, w - a);
    if (a.imag() <= w.imag()) {
      if (b.imag() > w.imag() && side > 0.0) ++wn;
    } else if (b.imag() <= w.imag() && side < 0.0) {
      --wn;
    }
  }
  return wn;
}

MembershipVerdict subordination_check(const ComplexMap& F, const ComplexMap& G, const SubordinationOptions& opts) {
  return subordinate_impl([&F](cplx z) { return TestValue{F(z), 0.0}; }, G, opts);
}

MembershipVerdict subordination_check(const PowerSeries& F, const ComplexMap& G, const SubordinationOptions& opts) {
  return subordinate_impl(
      [&F](cplx z) {
        const Evaluation e = evaluate(F, z);
        return TestValue{e.value, e.tail_bound};
      },
      G, opts);
}

}  // namespace htlab
