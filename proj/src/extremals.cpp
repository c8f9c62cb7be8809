#include "htlab/extremals.hpp"

#include <cmath>
#include <cstdio>

#include "htlab/errors.hpp"
#include "htlab/toeplitz.hpp"

namespace htlab {

std::string to_string(ExtremalName name) {
  switch (name) {
    case ExtremalName::Koebe: return "koebe";
    case ExtremalName::F1: return "f1";
    case ExtremalName::F2: return "f2";
    case ExtremalName::F3: return "f3";
    case ExtremalName::F4: return "f4";
    case ExtremalName::F5: return "f5";
    case ExtremalName::F6: return "f6";
  }
  return "?";
}

ExtremalName parse_extremal(std::string_view name) {
  for (auto n : {ExtremalName::Koebe, ExtremalName::F1, ExtremalName::F2, ExtremalName::F3, ExtremalName::F4,
                 ExtremalName::F5, ExtremalName::F6}) {
    if (name == to_string(n)) return n;
  }
  throw DomainError("unknown extremal function '" + std::string(name) + "'");
}

bool needs_lambda(ExtremalName name) { return name == ExtremalName::F2 || name == ExtremalName::F4; }

RationalFunction rational(const ExtremalSpec& spec) {
  double l = 0.0;
  if (needs_lambda(spec.name)) {
    if (!spec.lambda) throw DomainError(to_string(spec.name) + " needs lambda");
    l = *spec.lambda;
    // 1 - z + l z^2 has no zero in the closed disc for l in (0, 1]
    if (!(l > 0.0 && l <= 1.0)) throw DomainError("lambda must lie in (0, 1]");
  }
  switch (spec.name) {
    case ExtremalName::Koebe: return {{0.0, 1.0}, {1.0, -2.0, 1.0}};
    case ExtremalName::F1: return {{0.0, 1.0}, {1.0, -1.0, 1.0}};
    case ExtremalName::F2: return {{0.0, 1.0}, {1.0, -1.0, l}};
    case ExtremalName::F3: return {{0.0, 1.0}, {1.0}};
    case ExtremalName::F4: return {{0.0, 1.0}, {1.0, -(1.0 + l), l}};
    case ExtremalName::F5: return {{0.0, 1.0}, {1.0, -1.0}};
    case ExtremalName::F6: return {{0.0, 1.0, -0.5}, {1.0}};
  }
  throw DomainError("unknown extremal function");
}

PowerSeries expand(const ExtremalSpec& spec, int order) { return rational(spec).series(order); }

std::vector<double> default_lambda_grid() { return {0.2, 0.4, lambda0(), 0.6, 0.8, 1.0}; }

Crossover crossover_at(double lambda) {
  Crossover c;
  c.lambda = lambda;
  c.identity_value = t3(expand({ExtremalName::F3, std::nullopt}, 3));
  c.f4_value = t3(expand({ExtremalName::F4, lambda}, 3));
  return c;
}

namespace {

std::string lambda_label(const char* cls, double l) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s(%.6g)", cls, l);
  return buf;
}

}  // namespace

std::vector<AttainmentRow> attainment_table(std::span<const double> lambdas, const AttainmentOptions& opts) {
  std::vector<AttainmentRow> rows;
  auto add = [&](ExtremalSpec ex, std::string cls, ClassSpec cert, Determinant d, BoundSide side, double claimed,
                 bool inconclusive_ok = false) {
    AttainmentRow row;
    row.extremal = ex;
    row.theorem_class = std::move(cls);
    row.certificate = cert;
    row.determinant = d;
    row.side = side;
    row.claimed = claimed;
    row.inconclusive_allowed = inconclusive_ok;
    const PowerSeries f = expand(ex, 3);
    row.computed = d == Determinant::T2 ? t2(f) : t3(f);
    row.value_match = std::abs(row.computed - row.claimed) <= opts.tolerance;
    const MembershipVerdict v = check_membership(rational(ex), cert, opts.grid, opts.membership);
    row.membership = v.status;
    row.membership_detail = v.detail;
    const bool member_ok = v.status == Status::Pass || (inconclusive_ok && v.status == Status::Inconclusive);
    row.match = row.value_match && member_ok;
    rows.push_back(std::move(row));
  };

  const ExtremalSpec koebe{ExtremalName::Koebe, std::nullopt};
  const ExtremalSpec f1{ExtremalName::F1, std::nullopt};
  const ExtremalSpec f3{ExtremalName::F3, std::nullopt};
  const ExtremalSpec f5{ExtremalName::F5, std::nullopt};
  const ExtremalSpec f6{ExtremalName::F6, std::nullopt};

  // S, certified through U(1) which contains k and f1.
  add(koebe, "S", ClassSpec::u(1.0), Determinant::T2, BoundSide::Lo, -3.0);
  add(f3, "S", ClassSpec::u(1.0), Determinant::T2, BoundSide::Hi, 1.0);
  add(koebe, "S", ClassSpec::u(1.0), Determinant::T3, BoundSide::Hi, 8.0);
  add(f1, "S", ClassSpec::u(1.0), Determinant::T3, BoundSide::Lo, -1.0);

  const double l0 = lambda0();
  for (double l : lambdas) {
    const ExtremalSpec f2{ExtremalName::F2, l};
    const ExtremalSpec f4{ExtremalName::F4, l};
    add(f4, lambda_label("U", l), ClassSpec::u(l), Determinant::T2, BoundSide::Lo, -l * (2.0 + l));
    add(f3, lambda_label("U", l), ClassSpec::u(l), Determinant::T2, BoundSide::Hi, 1.0);
    add(f2, lambda_label("U_s", l), ClassSpec::usub(l), Determinant::T3, BoundSide::Lo, -l * l, true);
    // the crossover point belongs to both branches
    const bool at_crossover = std::abs(l - l0) <= 1e-9;
    if (l <= l0 || at_crossover) {
      add(f3, lambda_label("U_s", l), ClassSpec::usub(l), Determinant::T3, BoundSide::Hi, 1.0);
    }
    if (l >= l0 || at_crossover) {
      add(f4, lambda_label("U_s", l), ClassSpec::usub(l), Determinant::T3, BoundSide::Hi,
          l * l * (1.0 + l) * (3.0 + l));
    }
  }

  add(f5, "C", ClassSpec::convex(0.0), Determinant::T3, BoundSide::Lo, 0.0);
  add(f3, "C", ClassSpec::convex(0.0), Determinant::T3, BoundSide::Hi, 1.0);
  add(f6, "G", ClassSpec::g(1.0), Determinant::T3, BoundSide::Lo, 0.5);
  add(f3, "G", ClassSpec::g(1.0), Determinant::T3, BoundSide::Hi, 1.0);
  return rows;
}

nlohmann::json to_json(const AttainmentRow& row) {
  nlohmann::json j = {{"extremal", to_string(row.extremal.name)},
                      {"class", row.theorem_class},
                      {"certificate", {{"class", row.certificate.name()}, {"param", row.certificate.param}}},
                      {"determinant", row.determinant == Determinant::T2 ? "T2" : "T3"},
                      {"side", row.side == BoundSide::Lo ? "lo" : "hi"},
                      {"computed", row.computed},
                      {"claimed", row.claimed},
                      {"membership", to_string(row.membership)},
                      {"match", row.match}};
  j["lambda"] = row.extremal.lambda ? nlohmann::json(*row.extremal.lambda) : nlohmann::json(nullptr);
  if (!row.membership_detail.empty()) j["membership_detail"] = row.membership_detail;
  return j;
}

nlohmann::json to_json(std::span<const AttainmentRow> rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return arr;
}

std::string to_csv(std::span<const AttainmentRow> rows) {
  std::string out = "extremal,lambda,class,determinant,side,computed,claimed,membership,match\n";
  char buf[256];
  for (const auto& r : rows) {
    char lam[32] = "";
    if (r.extremal.lambda) std::snprintf(lam, sizeof lam, "%.17g", *r.extremal.lambda);
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%s,%s,%.17g,%.17g,%s,%s\n", to_string(r.extremal.name).c_str(), lam,
                  r.theorem_class.c_str(), r.determinant == Determinant::T2 ? "T2" : "T3",
                  r.side == BoundSide::Lo ? "lo" : "hi", r.computed, r.claimed, to_string(r.membership).c_str(),
                  r.match ? "true" : "false");
    out += buf;
  }
  return out;
}

}  // namespace htlab
