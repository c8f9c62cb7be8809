#include "htlab/classes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "circle_eval.hpp"
#include "htlab/errors.hpp"

namespace htlab {

void ClassSpec::validate() const {
  switch (kind) {
    case ClassKind::Starlike:
    case ClassKind::Convex:
      if (!(param >= 0.0 && param < 1.0)) throw DomainError("alpha must lie in [0, 1)");
      break;
    case ClassKind::U:
    case ClassKind::USub:
      if (!(param > 0.0 && param <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
      break;
    case ClassKind::G:
      if (!(param > 0.0 && param <= 1.0)) throw DomainError("delta must lie in (0, 1]");
      break;
  }
}

std::string to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::Starlike: return "s-star";
    case ClassKind::Convex: return "convex";
    case ClassKind::U: return "u";
    case ClassKind::USub: return "u-sub";
    case ClassKind::G: return "g";
  }
  return "?";
}

std::string ClassSpec::name() const { return to_string(kind); }

ClassKind parse_class_kind(std::string_view name) {
  for (auto k : {ClassKind::Starlike, ClassKind::Convex, ClassKind::U, ClassKind::USub, ClassKind::G}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown class '" + std::string(name) + "'");
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Grid Grid::geometric(int count, double r_min, double r_max, int angles) {
  if (count < 1 || !(r_min > 0.0 && r_min <= r_max && r_max < 1.0) || angles < 3) {
    throw DomainError("invalid membership grid");
  }
  Grid g;
  g.angles = angles;
  g.radii.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    g.radii.push_back(r_max);
    return g;
  }
  const double ratio = std::log(r_max / r_min) / (count - 1);
  for (int k = 0; k < count; ++k) g.radii.push_back(k + 1 == count ? r_max : r_min * std::exp(ratio * k));
  return g;
}

Grid Grid::defaults() { return geometric(64, 0.1, 0.99, 720); }

double Grid::outer_radius() const { return radii.empty() ? 0.0 : *std::max_element(radii.begin(), radii.end()); }

Grid Grid::clipped(double r_max) const {
  Grid g;
  g.angles = angles;
  std::copy_if(radii.begin(), radii.end(), std::back_inserter(g.radii), [&](double r) { return r <= r_max; });
  return g;
}

namespace {

struct Needs {
  bool value;
  bool second;  // f'' instead of f
};

Needs needs(ClassKind k) {
  switch (k) {
    case ClassKind::Convex:
    case ClassKind::G: return {false, true};
    default: return {true, false};
  }
}

struct FunctionalValue {
  double value;
  const char* zero = nullptr;  // set when a denominator vanished
};

FunctionalValue functional(const ClassSpec& spec, cplx z, const Jet& j, double guard) {
  switch (spec.kind) {
    case ClassKind::Starlike:
      if (std::abs(j.f) < guard) return {0.0, "f vanishes"};
      return {(z * j.df / j.f).real() - spec.param};
    case ClassKind::Convex:
      if (std::abs(j.df) < guard) return {0.0, "f' vanishes"};
      return {(1.0 + z * j.d2f / j.df).real() - spec.param};
    case ClassKind::U:
    case ClassKind::USub: {
      if (std::abs(j.f) < guard) return {0.0, "f vanishes"};
      const cplx q = z / j.f;
      return {spec.param - std::abs(q * q * j.df - 1.0)};
    }
    case ClassKind::G:
      if (std::abs(j.df) < guard) return {0.0, "f' vanishes"};
      return {1.0 + 0.5 * spec.param - (1.0 + z * j.d2f / j.df).real()};
  }
  return {0.0};
}

// sample(r, jets) fills jets[m] for z = r e^{2 pi i m / angles}.
template <class Sampler>
MembershipVerdict scan(const ClassSpec& spec, const Grid& grid, const MembershipOptions& opts,
                       Sampler&& sample) {
  MembershipVerdict v;
  if (grid.radii.empty()) {
    v.detail = "no trusted radii in grid";
    return v;
  }
  std::vector<Jet> jets(static_cast<std::size_t>(grid.angles));
  double worst = std::numeric_limits<double>::infinity();
  cplx worst_at{};
  const double step = 2.0 * std::numbers::pi / grid.angles;
  for (double r : grid.radii) {
    sample(r, jets);
    for (int m = 0; m < grid.angles; ++m) {
      const cplx z = std::polar(r, step * m);
      const auto fv = functional(spec, z, jets[static_cast<std::size_t>(m)], opts.zero_guard);
      if (fv.zero != nullptr) {
        v.status = Status::Fail;
        v.margin = -std::numeric_limits<double>::infinity();
        v.witness = z;
        v.detail = fv.zero;
        return v;
      }
      if (fv.value < worst) {
        worst = fv.value;
        worst_at = z;
      }
    }
  }
  v.margin = worst;
  if (worst > opts.tolerance) {
    v.status = Status::Pass;
  } else {
    v.status = Status::Fail;
    v.witness = worst_at;
    v.detail = "defining inequality violated";
  }
  return v;
}

MembershipVerdict combine(MembershipVerdict a, const MembershipVerdict& b) {
  auto rank = [](Status s) { return s == Status::Fail ? 2 : s == Status::Inconclusive ? 1 : 0; };
  if (rank(b.status) > rank(a.status)) {
    a.status = b.status;
    a.witness = b.witness;
    a.detail = "subordination: " + b.detail;
  }
  a.margin = std::min(a.margin, b.margin);
  return a;
}

}  // namespace

Grid trusted_grid(const PowerSeries& f, const ClassSpec& spec, const Grid& base, double tol) {
  const Needs n = needs(spec.kind);
  const PowerSeries df = derivative(f).resized(std::max(1, f.order() - 1));
  double r = trusted_radius(df, tol, base.outer_radius());
  if (n.value) r = std::min(r, trusted_radius(f, tol, base.outer_radius()));
  if (n.second) {
    const PowerSeries d2f = derivative(df).resized(std::max(1, df.order() - 1));
    r = std::min(r, trusted_radius(d2f, tol, base.outer_radius()));
  }
  return base.clipped(r);
}

MembershipVerdict check_membership(const PowerSeries& f, const ClassSpec& spec, const Grid& grid,
                                   const MembershipOptions& opts) {
  spec.validate();
  if (!f.is_normalized()) throw DomainError("membership requires a normalized series");
  const Needs n = needs(spec.kind);
  const PowerSeries df = derivative(f).resized(std::max(1, f.order() - 1));
  const PowerSeries d2f = derivative(df).resized(std::max(1, df.order() - 1));

  const double outer = grid.outer_radius();
  double tail = tail_bound(df, outer);
  if (n.value) tail = std::max(tail, tail_bound(f, outer));
  if (n.second) tail = std::max(tail, tail_bound(d2f, outer));
  if (!grid.radii.empty() && tail > opts.tolerance) {
    MembershipVerdict v;
    v.detail = "tail bound " + std::to_string(tail) + " at r=" + std::to_string(outer) +
               " exceeds tolerance; raise the order or shrink the grid";
    return v;
  }

  detail::CircleEvaluator ev(grid.angles);
  const auto M = static_cast<std::size_t>(grid.angles);
  std::vector<cplx> v0(M), v1(M), v2(M);
  auto sample = [&](double r, std::vector<Jet>& jets) {
    ev.evaluate(df.coeffs(), r, v1);
    if (n.value) ev.evaluate(f.coeffs(), r, v0);
    if (n.second) ev.evaluate(d2f.coeffs(), r, v2);
    for (std::size_t m = 0; m < M; ++m) jets[m] = {v0[m], v1[m], v2[m]};
  };
  MembershipVerdict v = scan(spec, grid, opts, sample);
  if (spec.kind == ClassKind::USub && v.status == Status::Pass) {
    const double lambda = spec.param;
    v = combine(v, subordination_check(shift_down(f), [lambda](cplx z) { return usub_superordinate(lambda, z); },
                                       opts.subordination));
  }
  return v;
}

MembershipVerdict check_membership(const RationalFunction& f, const ClassSpec& spec, const Grid& grid,
                                   const MembershipOptions& opts) {
  spec.validate();
  const double step = 2.0 * std::numbers::pi / grid.angles;
  auto sample = [&](double r, std::vector<Jet>& jets) {
    for (std::size_t m = 0; m < jets.size(); ++m) jets[m] = f.jet(std::polar(r, step * static_cast<double>(m)));
  };
  MembershipVerdict v = scan(spec, grid, opts, sample);
  if (spec.kind == ClassKind::USub && v.status == Status::Pass) {
    const double lambda = spec.param;
    const RationalFunction F = f.divided_by_z();
    v = combine(v, subordination_check([&F](cplx z) { return F(z); },
                                       [lambda](cplx z) { return usub_superordinate(lambda, z); },
                                       opts.subordination));
  }
  return v;
}

cplx usub_superordinate(double lambda, cplx z) { return 1.0 / ((1.0 + z) * (1.0 + lambda * z)); }

nlohmann::json to_json(const MembershipVerdict& v, const ClassSpec& spec, const Grid& grid) {
  nlohmann::json j = {{"class", spec.name()},
                      {"param", spec.param},
                      {"status", to_string(v.status)},
                      {"margin", std::isfinite(v.margin) ? nlohmann::json(v.margin) : nlohmann::json(nullptr)},
                      {"grid", {{"radii", grid.radii.size()},
                                {"r_max", grid.outer_radius()},
                                {"angles", grid.angles}}}};
  if (v.witness) j["witness"] = {v.witness->real(), v.witness->imag()};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace htlab
