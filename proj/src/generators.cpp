#include "htlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "circle_eval.hpp"
#include "htlab/errors.hpp"
#include "htlab/series_io.hpp"

namespace htlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the distributions are not,
// so the conversions to doubles are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  /// Area-uniform point of the closed disc of the given radius.
  cplx in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
  }

 private:
  std::mt19937_64 engine_;
};

// (omega / z) / (1 - omega), order N - 1
PowerSeries omega_ratio(const PowerSeries& omega) {
  const int N = omega.order();
  const PowerSeries one_minus = PowerSeries::constant(1.0, N - 1) - omega.resized(N - 1);
  return mul(shift_down(omega), reciprocal(one_minus));
}

// f with f(0) = 0 and f''/f' = q, where q has order N - 1.
PowerSeries integrate_log_derivative_of_derivative(const PowerSeries& q) {
  const PowerSeries df = exp(integrate_from_zero(q));
  std::vector<cplx> c(static_cast<std::size_t>(q.order()) + 2);
  for (int k = 0; k <= df.order(); ++k) c[static_cast<std::size_t>(k + 1)] = df[k] / static_cast<double>(k + 1);
  return PowerSeries(std::move(c));
}

}  // namespace

cplx SchwarzFunction::operator()(cplx z) const {
  cplx w = scale * std::pow(z, prefactor_power);
  for (const auto& a : zeros) w *= (z - a) / (1.0 - std::conj(a) * z);
  return w;
}

PowerSeries SchwarzFunction::series(int order) const {
  PowerSeries s = PowerSeries::constant(scale, order - prefactor_power);
  for (const auto& a : zeros) {
    const cplx num[] = {-a, 1.0};
    const cplx den[] = {1.0, -std::conj(a)};
    s = mul(s, from_rational(num, den, s.order()));
  }
  return shift_up(s, prefactor_power);
}

SchwarzFunction random_schwarz(std::uint64_t seed, int degree, int prefactor_power) {
  if (degree < 0 || prefactor_power < 1) throw DomainError("invalid Schwarz function shape");
  Rng rng(seed);
  SchwarzFunction w;
  w.prefactor_power = prefactor_power;
  w.zeros.reserve(static_cast<std::size_t>(degree));
  for (int k = 0; k < degree; ++k) w.zeros.push_back(rng.in_disc(0.9));
  w.scale = rng.in_disc(1.0);
  return w;
}

PowerSeries member_from_schwarz(const ClassSpec& spec, const SchwarzFunction& omega, int order, cplx c1) {
  spec.validate();
  const PowerSeries w = omega.series(order);
  switch (spec.kind) {
    case ClassKind::Starlike: {
      // z f'/f = alpha + (1 - alpha)(1 + w)/(1 - w)  =>  (log f/z)' = 2 (1 - alpha) (w/z)/(1 - w)
      const PowerSeries q = omega_ratio(w) * (2.0 * (1.0 - spec.param));
      return shift_up(exp(integrate_from_zero(q)));
    }
    case ClassKind::Convex: {
      const PowerSeries q = omega_ratio(w) * (2.0 * (1.0 - spec.param));
      return integrate_log_derivative_of_derivative(q);
    }
    case ClassKind::G: {
      // z f''/f' = -delta w/(1 - w)
      const PowerSeries q = omega_ratio(w) * (-spec.param);
      return integrate_log_derivative_of_derivative(q);
    }
    case ClassKind::U:
    case ClassKind::USub: {
      if (w[1] != cplx{}) throw DomainError("U(lambda) construction needs omega vanishing to order 2");
      // g = z/f with g - z g' - 1 = sum (1 - n) c_n z^n = lambda w
      std::vector<cplx> g(static_cast<std::size_t>(order));
      g[0] = 1.0;
      g[1] = c1;
      for (int n = 2; n < order; ++n) g[static_cast<std::size_t>(n)] = -spec.param * w[n] / static_cast<double>(n - 1);
      return shift_up(reciprocal(PowerSeries(std::move(g))));
    }
  }
  throw DomainError("unknown class");
}

namespace {

// z/f built from omega and c1 at order N, for the zero screen.
PowerSeries u_denominator(double lambda, const SchwarzFunction& omega, cplx c1, int order) {
  const PowerSeries w = omega.series(order);
  std::vector<cplx> g(static_cast<std::size_t>(order) + 1);
  g[0] = 1.0;
  g[1] = c1;
  for (int n = 2; n <= order; ++n) g[static_cast<std::size_t>(n)] = -lambda * w[n] / static_cast<double>(n - 1);
  return PowerSeries(std::move(g));
}

// True when g has a zero in the grid's outer disc, judged by min |g| on
// the grid and by the winding of g around 0 on the outer circle.
bool has_zero(const PowerSeries& g, const Grid& grid, double min_g) {
  detail::CircleEvaluator ev(grid.angles);
  std::vector<cplx> v(static_cast<std::size_t>(grid.angles));
  for (double r : grid.radii) {
    ev.evaluate(g.coeffs(), r, v);
    for (const auto& x : v) {
      if (std::abs(x) < min_g) return true;
    }
  }
  ev.evaluate(g.coeffs(), grid.outer_radius(), v);
  return winding_number(v, cplx{}) != 0;
}

}  // namespace

GeneratedMember generate_member(const ClassSpec& spec, std::uint64_t seed, int order, const GeneratorConfig& config) {
  spec.validate();
  if (order < 8) throw OrderError("generated members need order >= 8");
  const bool u_like = spec.kind == ClassKind::U || spec.kind == ClassKind::USub;
  const int verify_order = std::min(PowerSeries::kMaxOrder, std::max(order, config.verify_order));

  GeneratedMember out;
  out.seed = seed;
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    out.attempts = attempt + 1;
    Rng rng(seed ^ splitmix64(static_cast<std::uint64_t>(attempt) + 0x5eedULL));
    const int degree = rng.below(config.max_degree + 1);
    const SchwarzFunction omega = random_schwarz(rng.next(), degree, u_like ? 2 : 1);
    const cplx c1 = u_like ? rng.in_disc(1.0 + spec.param) : cplx{};

    if (u_like && has_zero(u_denominator(spec.param, omega, c1, PowerSeries::kMaxOrder), config.grid, config.min_g)) {
      ++out.rejected_fail;
      continue;
    }
    const PowerSeries f = member_from_schwarz(spec, omega, verify_order, c1);
    const Grid grid = trusted_grid(f, spec, config.grid, config.membership.tolerance);
    const MembershipVerdict verdict = check_membership(f, spec, grid, config.membership);
    if (verdict.status == Status::Fail) {
      ++out.rejected_fail;
      continue;
    }
    if (verdict.status == Status::Inconclusive && !config.accept_inconclusive) {
      ++out.rejected_inconclusive;
      continue;
    }
    out.series = f.resized(order);
    out.omega = omega;
    out.c1 = c1;
    out.verdict = verdict;
    out.verified_radius = grid.outer_radius();
    return out;
  }
  throw GenerationError("no " + spec.name() + " member accepted for seed " + std::to_string(seed) + " after " +
                        std::to_string(config.max_attempts) + " attempts (" + std::to_string(out.rejected_fail) +
                        " failed, " + std::to_string(out.rejected_inconclusive) + " inconclusive)");
}

nlohmann::json to_json(const GeneratedMember& m, const ClassSpec& spec) {
  return {{"class", spec.name()}, {"param", spec.param}, {"seed", m.seed}, {"coefficients", to_json(m.series)}};
}

}  // namespace htlab
