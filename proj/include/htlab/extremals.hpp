#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "htlab/analytic.hpp"
#include "htlab/classes.hpp"
#include "htlab/series.hpp"
#include "json.hpp"

namespace htlab {

enum class ExtremalName {
  Koebe,  // z / (1 - z)^2
  F1,     // z / (1 - z + z^2)
  F2,     // z / (1 - z + lambda z^2)
  F3,     // z
  F4,     // z / ((1 - z)(1 - lambda z))
  F5,     // z / (1 - z)
  F6,     // z - z^2 / 2
};

std::string to_string(ExtremalName name);
/// koebe, f1, ..., f6. Throws DomainError on anything else.
ExtremalName parse_extremal(std::string_view name);
bool needs_lambda(ExtremalName name);

struct ExtremalSpec {
  ExtremalName name = ExtremalName::Koebe;
  std::optional<double> lambda;
};

/// Closed form of the named function. Throws DomainError when lambda is
/// missing for f2/f4 or outside (0, 1].
RationalFunction rational(const ExtremalSpec& spec);

/// Normalized Taylor expansion of order N.
PowerSeries expand(const ExtremalSpec& spec, int order);

enum class Determinant { T2, T3 };
enum class BoundSide { Lo, Hi };

struct AttainmentRow {
  ExtremalSpec extremal;
  /// Class the sharp bound is stated for: "S", "U(lambda)", "U_s(lambda)",
  /// "C", "G".
  std::string theorem_class;
  /// Class whose membership oracle certifies the extremal. For S this is
  /// U(1), a subclass of S containing both k and f1.
  ClassSpec certificate;
  Determinant determinant = Determinant::T3;
  BoundSide side = BoundSide::Hi;
  double computed = 0.0;
  double claimed = 0.0;
  Status membership = Status::Inconclusive;
  std::string membership_detail;
  /// INCONCLUSIVE membership tolerated for this row (f2 in U_s).
  bool inconclusive_allowed = false;
  bool value_match = false;
  bool match = false;
};

struct AttainmentOptions {
  Grid grid = Grid::defaults();
  MembershipOptions membership;
  double tolerance = 1e-12;
};

/// One row per (extremal, bound) sharpness claim. Rows depending on
/// lambda are produced for every entry of `lambdas`; the f3 / f4 upper
/// T3 rows for U_s only on their side of lambda0.
std::vector<AttainmentRow> attainment_table(std::span<const double> lambdas,
                                            const AttainmentOptions& opts = {});

/// lambda values used when the caller has no preference; includes lambda0.
std::vector<double> default_lambda_grid();

/// Both candidates of the piecewise U_s upper bound at lambda, i.e. T3 of
/// f3 and of f4(lambda). At lambda0 they coincide.
struct Crossover {
  double lambda = 0.0;
  double identity_value = 0.0;  // T3(f3) = 1
  double f4_value = 0.0;        // T3(f4) = l^2 (1 + l)(3 + l)
};
Crossover crossover_at(double lambda);

nlohmann::json to_json(const AttainmentRow& row);
nlohmann::json to_json(std::span<const AttainmentRow> rows);
std::string to_csv(std::span<const AttainmentRow> rows);

}  // namespace htlab
