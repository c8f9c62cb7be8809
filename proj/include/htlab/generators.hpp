#pragma once

#include <cstdint>
#include <vector>

#include "htlab/classes.hpp"
#include "htlab/series.hpp"
#include "json.hpp"

namespace htlab {

/// omega(z) = scale * z^prefactor_power * prod_k (z - z_k) / (1 - conj(z_k) z)
///
/// A finite Blaschke product times a scale of modulus at most one, so
/// |omega| < 1 on the disc and omega(0) = 0.
struct SchwarzFunction {
  std::vector<cplx> zeros;
  int prefactor_power = 1;
  cplx scale = 1.0;

  cplx operator()(cplx z) const;
  PowerSeries series(int order) const;
};

/// Deterministic in seed: zeros uniform (by area) in |z| <= 0.9, scale
/// uniform on the closed unit disc.
SchwarzFunction random_schwarz(std::uint64_t seed, int degree, int prefactor_power);

struct GeneratorConfig {
  /// Blaschke degree is drawn uniformly from [0, max_degree].
  int max_degree = 3;
  int max_attempts = 1000;
  /// U(lambda): reject when min |z/f| over the grid falls below this.
  double min_g = 1e-3;
  /// Candidates are expanded to this order (or the requested one, if
  /// larger) for the membership confirmation.
  int verify_order = 128;
  Grid grid = Grid::defaults();
  MembershipOptions membership;
  /// Keep INCONCLUSIVE candidates instead of rejecting them.
  bool accept_inconclusive = false;
};

/// Member of `spec` determined by omega. For U and U-sub, c1 is the z
/// coefficient of z/f (so a_2 = -c1) and omega must vanish to order 2.
/// The U construction fixes the remaining coefficients of g = z/f from
/// g - z g' - 1 = lambda omega.
PowerSeries member_from_schwarz(const ClassSpec& spec, const SchwarzFunction& omega, int order, cplx c1 = 0.0);

struct GeneratedMember {
  PowerSeries series;
  std::uint64_t seed = 0;
  int attempts = 0;
  int rejected_fail = 0;
  int rejected_inconclusive = 0;
  SchwarzFunction omega;
  cplx c1 = 0.0;
  MembershipVerdict verdict;
  /// Outermost radius the confirmation covered.
  double verified_radius = 0.0;
};

/// Rejection sampler: draws omega (and c1 for U) from seed, builds the
/// member, and confirms it with check_membership on the part of the grid
/// where the expansion is trusted. Throws GenerationError when the
/// attempt budget is exhausted. Requires order >= 8.
GeneratedMember generate_member(const ClassSpec& spec, std::uint64_t seed, int order,
                                const GeneratorConfig& config = {});

/// {"class", "param", "seed", "coefficients": [[re, im], ...]}
nlohmann::json to_json(const GeneratedMember& m, const ClassSpec& spec);

}  // namespace htlab
