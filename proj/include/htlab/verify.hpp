#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htlab/classes.hpp"
#include "htlab/extremals.hpp"
#include "htlab/generators.hpp"
#include "htlab/toeplitz.hpp"
#include "json.hpp"

namespace htlab {

/// Determinant ranges checked for a class, with the coefficient estimates
/// they come from.
struct ClassBounds {
  CoeffBoundProblem problem;
  DeterminantBounds t2;
  DeterminantBounds t3;
  std::string source;
  bool lambda0_used = false;
};

/// U_s(lambda) and U(1) use their own estimates. Starlike, convex and G
/// classes with a nonzero parameter reuse the estimates of the larger
/// class S, C or G(1) they sit in; U(lambda) combines |a_2| <= 1 + lambda
/// with the S estimates for a_3.
ClassBounds bounds_for(const ClassSpec& spec);

struct VerifyConfig {
  ClassSpec spec;
  int samples = 100;
  std::uint64_t seed = 0;
  int order = PowerSeries::kDefaultOrder;
  /// Slack on every determinant bound.
  double tol = 1e-9;
  GeneratorConfig generator;
  bool inconclusive_is_warning = false;
};

struct SampleRecord {
  std::uint64_t seed = 0;
  cplx a2;
  cplx a3;
  double t2 = 0.0;
  double t3 = 0.0;
  Status membership = Status::Pass;
  double verified_radius = 0.0;
};

struct Violation {
  std::uint64_t seed = 0;
  std::string quantity;  // "T2", "T3" or "attainment"
  double value = 0.0;
  double bound = 0.0;
  std::string side;  // "lo" or "hi"
};

struct ObservedRange {
  double min = 0.0;
  double max = 0.0;
};

struct VerificationReport {
  VerifyConfig config;
  ClassBounds bounds;
  std::optional<ObservedRange> t2;
  std::optional<ObservedRange> t3;
  std::vector<SampleRecord> samples;
  std::vector<Violation> violations;
  std::vector<AttainmentRow> attainment;
  int generation_failures = 0;
  int attempts = 0;
  int rejected_fail = 0;
  int rejected_inconclusive = 0;
  int inconclusive = 0;
  bool aborted = false;
  std::string abort_reason;
  double elapsed_ms = 0.0;
  std::string timestamp;

  /// 0 ok, 1 violation (or unexcused INCONCLUSIVE), 3 generation failure.
  int exit_code() const;
};

/// Generates config.samples members with seeds seed, seed+1, ..., checks
/// T2/T3 of each against bounds_for(spec), and embeds the attainment rows
/// of the class. Stops early once more than half of the samples failed to
/// generate.
VerificationReport run_verify(const VerifyConfig& config);

/// Everything except the "timing" member is a function of the config.
nlohmann::json to_json(const VerificationReport& r);
/// One row per accepted sample: seed,t2,t3,a2_re,a2_im,a3_re,a3_im.
std::string samples_csv(const VerificationReport& r);

}  // namespace htlab
