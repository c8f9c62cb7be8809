#include "htlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>

#include "htlab/errors.hpp"

namespace htlab {

ClassBounds bounds_for(const ClassSpec& spec) {
  spec.validate();
  ClassBounds b;
  switch (spec.kind) {
    case ClassKind::Starlike:
      b.problem = problem_univalent();
      b.source = spec.param == 0.0 ? "S*(0): estimates of S" : "S*(alpha) is a subclass of S: estimates of S";
      break;
    case ClassKind::Convex:
      b.problem = problem_convex();
      b.source = spec.param == 0.0 ? "C: |a2|<=1, |a3|<=1, |a3-a2^2|<=(1-|a2|^2)/3"
                                   : "C(alpha) is a subclass of C: estimates of C";
      break;
    case ClassKind::U:
      b.problem = {1.0 + spec.param, 3.0, ErrorProfile::constant(1.0)};
      b.source = spec.param == 1.0 ? "U = U_s(1): estimates of S"
                                   : "|a2|<=1+lambda on U(lambda); |a3|<=3, |a3-a2^2|<=1 from S";
      break;
    case ClassKind::USub:
      b.problem = problem_usub(spec.param);
      b.source = "U_s(lambda): |a2|<=1+lambda, |a3|<=1+lambda+lambda^2, |a3-a2^2|<=lambda";
      b.lambda0_used = true;
      break;
    case ClassKind::G:
      b.problem = problem_g1();
      b.source = spec.param == 1.0 ? "G: |a2|<=1/2, |a3|<=1/6, |a3-a2^2|<=1/4"
                                   : "G(delta) is a subclass of G(1): estimates of G";
      break;
  }
  b.t2 = t2_bounds(b.problem);
  b.t3 = t3_bounds(b.problem);
  return b;
}

int VerificationReport::exit_code() const {
  if (aborted) return 3;
  const bool mismatch = std::any_of(attainment.begin(), attainment.end(), [](const auto& r) { return !r.match; });
  if (!violations.empty() || mismatch) return 1;
  if (inconclusive > 0 && !config.inconclusive_is_warning) return 1;
  return 0;
}

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void observe(std::optional<ObservedRange>& range, double v) {
  if (!range) {
    range = ObservedRange{v, v};
  } else {
    range->min = std::min(range->min, v);
    range->max = std::max(range->max, v);
  }
}

void check(std::vector<Violation>& out, std::uint64_t seed, const char* what, double v, DeterminantBounds b,
           double tol) {
  if (v < b.lo - tol) out.push_back({seed, what, v, b.lo, "lo"});
  if (v > b.hi + tol) out.push_back({seed, what, v, b.hi, "hi"});
}

std::vector<AttainmentRow> class_rows(const ClassSpec& spec) {
  std::string label;
  std::vector<double> lambdas;
  switch (spec.kind) {
    case ClassKind::Starlike: label = "S"; break;
    case ClassKind::Convex: label = "C"; break;
    case ClassKind::G: label = "G"; break;
    case ClassKind::U: label = "U("; lambdas = {spec.param}; break;
    case ClassKind::USub: label = "U_s("; lambdas = {spec.param}; break;
  }
  auto rows = attainment_table(lambdas);
  std::erase_if(rows, [&](const AttainmentRow& r) { return r.theorem_class.rfind(label, 0) != 0; });
  // rows are stated for alpha = 0 and delta = 1 only
  if (spec.param != 0.0 && (spec.kind == ClassKind::Starlike || spec.kind == ClassKind::Convex)) rows.clear();
  if (spec.kind == ClassKind::G && spec.param != 1.0) rows.clear();
  return rows;
}

nlohmann::json range_json(const std::optional<ObservedRange>& r) {
  if (!r) return nullptr;
  return {{"min", r->min}, {"max", r->max}};
}

}  // namespace

VerificationReport run_verify(const VerifyConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.config = config;
  rep.timestamp = utc_now();
  rep.bounds = bounds_for(config.spec);

  for (int i = 0; i < config.samples; ++i) {
    const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
    try {
      const GeneratedMember m = generate_member(config.spec, seed, config.order, config.generator);
      rep.attempts += m.attempts;
      rep.rejected_fail += m.rejected_fail;
      rep.rejected_inconclusive += m.rejected_inconclusive;
      SampleRecord s;
      s.seed = seed;
      s.a2 = m.series[2];
      s.a3 = m.series[3];
      s.t2 = t2(m.series);
      s.t3 = t3(m.series);
      s.membership = m.verdict.status;
      s.verified_radius = m.verified_radius;
      if (s.membership == Status::Inconclusive) ++rep.inconclusive;
      observe(rep.t2, s.t2);
      observe(rep.t3, s.t3);
      check(rep.violations, seed, "T2", s.t2, rep.bounds.t2, config.tol);
      check(rep.violations, seed, "T3", s.t3, rep.bounds.t3, config.tol);
      rep.samples.push_back(s);
    } catch (const GenerationError& e) {
      ++rep.generation_failures;
      rep.attempts += config.generator.max_attempts;
      if (2 * rep.generation_failures > config.samples) {
        rep.aborted = true;
        rep.abort_reason = std::string("generation failure rate above 50%: ") + e.what();
        break;
      }
    }
  }

  if (!rep.aborted && config.samples > 0) rep.attainment = class_rows(config.spec);
  for (const auto& row : rep.attainment) {
    if (!row.match) rep.violations.push_back({0, "attainment", row.computed, row.claimed, row.side == BoundSide::Lo ? "lo" : "hi"});
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

nlohmann::json to_json(const VerificationReport& r) {
  auto violations = nlohmann::json::array();
  for (const auto& v : r.violations) {
    violations.push_back(
        {{"seed", v.seed}, {"quantity", v.quantity}, {"value", v.value}, {"bound", v.bound}, {"side", v.side}});
  }
  double min_radius = 1.0;
  for (const auto& s : r.samples) min_radius = std::min(min_radius, s.verified_radius);

  const int code = r.exit_code();
  return {
      {"class", r.config.spec.name()},
      {"param", r.config.spec.param},
      {"samples", r.config.samples},
      {"seed", r.config.seed},
      {"order", r.config.order},
      {"tol", r.config.tol},
      {"bounds",
       {{"source", r.bounds.source},
        {"problem", to_json(r.bounds.problem)},
        {"t2", {{"lo", r.bounds.t2.lo}, {"hi", r.bounds.t2.hi}}},
        {"t3", {{"lo", r.bounds.t3.lo}, {"hi", r.bounds.t3.hi}}},
        {"lambda0_used", r.bounds.lambda0_used}}},
      {"observed", {{"t2", range_json(r.t2)}, {"t3", range_json(r.t3)}}},
      {"violations", violations},
      {"generation",
       {{"accepted", r.samples.size()},
        {"failures", r.generation_failures},
        {"attempts", r.attempts},
        {"rejected_fail", r.rejected_fail},
        {"rejected_inconclusive", r.rejected_inconclusive},
        {"inconclusive_accepted", r.inconclusive},
        {"min_verified_radius", r.samples.empty() ? nlohmann::json(nullptr) : nlohmann::json(min_radius)},
        {"aborted", r.aborted},
        {"abort_reason", r.abort_reason}}},
      {"attainment", to_json(std::span<const AttainmentRow>(r.attainment))},
      {"status", code == 0 ? "ok" : code == 3 ? "generation_failure" : "violation"},
      {"timing", {{"timestamp", r.timestamp}, {"elapsed_ms", r.elapsed_ms}}},
  };
}

std::string samples_csv(const VerificationReport& r) {
  std::string out = "seed,t2,t3,a2_re,a2_im,a3_re,a3_im\n";
  char buf[256];
  for (const auto& s : r.samples) {
    std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  static_cast<unsigned long long>(s.seed), s.t2, s.t3, s.a2.real(), s.a2.imag(), s.a3.real(),
                  s.a3.imag());
    out += buf;
  }
  return out;
}

}  // namespace htlab
