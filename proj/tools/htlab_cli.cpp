// htlab: batch harness for the Hermitian Toeplitz determinant laboratory.
//
//   htlab verify   --class convex --samples 100 --seed 7
//   htlab extremal --format csv
//   htlab lambda0  --tol 1e-5
//   htlab coeffs   koebe --order 5
//   htlab bounds   --class u-sub --lambda 0.75
//
// Exit codes: 0 ok, 1 violation, 2 usage error, 3 generation failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "htlab/errors.hpp"
#include "htlab/extremals.hpp"
#include "htlab/series_io.hpp"
#include "htlab/toeplitz.hpp"
#include "htlab/verify.hpp"

namespace {

using namespace htlab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;

struct ClassArgs {
  std::string name;
  std::optional<double> lambda;
  std::optional<double> alpha;
  std::optional<double> delta;

  void add_to(CLI::App* app, bool required) {
    auto* opt = app->add_option("--class", name, "s-star, convex, u, u-sub or g");
    if (required) opt->required();
    app->add_option("--lambda", lambda, "lambda for u / u-sub (default 1)");
    app->add_option("--alpha", alpha, "alpha for s-star / convex (default 0)");
    app->add_option("--delta", delta, "delta for g (default 1)");
  }

  ClassSpec spec() const {
    ClassSpec s{parse_class_kind(name), 0.0};
    switch (s.kind) {
      case ClassKind::Starlike:
      case ClassKind::Convex: s.param = alpha.value_or(0.0); break;
      case ClassKind::U:
      case ClassKind::USub: s.param = lambda.value_or(1.0); break;
      case ClassKind::G: s.param = delta.value_or(1.0); break;
    }
    s.validate();
    return s;
  }
};

// Flags win; otherwise HTLAB_OUT_DIR/<default_name>; otherwise stdout.
void emit(const std::string& text, const std::string& out_flag, const std::string& default_name) {
  std::filesystem::path path;
  if (!out_flag.empty()) {
    path = out_flag;
  } else if (const char* dir = std::getenv("HTLAB_OUT_DIR"); dir != nullptr && *dir != '\0') {
    path = std::filesystem::path(dir) / default_name;
  }
  if (path.empty()) {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string format_complex(cplx c) {
  char buf[80];
  if (c.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", c.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  }
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian Toeplitz determinant laboratory"};
  app.require_subcommand(1);
  std::string format = "json";
  std::string out;

  // verify
  auto* verify = app.add_subcommand("verify", "sample a class and check T2/T3 against its bounds");
  ClassArgs verify_class;
  verify_class.add_to(verify, true);
  VerifyConfig vc;
  int grid_radii = 64;
  int grid_angles = 720;
  double membership_tol = 1e-7;
  int max_degree = vc.generator.max_degree;
  int attempts = vc.generator.max_attempts;
  int verify_order = vc.generator.verify_order;
  bool keep_inconclusive = false;
  std::string samples_out;
  verify->add_option("--samples", vc.samples, "number of members to generate")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", vc.seed, "seed of the first sample; sample i uses seed+i");
  verify->add_option("--order", vc.order, "truncation order of the reported series")->check(CLI::Range(8, 256));
  verify->add_option("--tol", vc.tol, "slack on the determinant bounds");
  verify->add_option("--grid-radii", grid_radii, "membership grid radii (0.1 .. 0.99)")->check(CLI::PositiveNumber);
  verify->add_option("--grid-angles", grid_angles, "membership grid angles")->check(CLI::Range(3, 1 << 20));
  verify->add_option("--membership-tol", membership_tol, "margin tolerance of the membership oracle");
  verify->add_option("--max-degree", max_degree, "largest Blaschke degree of sampled Schwarz functions");
  verify->add_option("--attempts", attempts, "rejection budget per sample")->check(CLI::PositiveNumber);
  verify->add_option("--verify-order", verify_order, "expansion order used to confirm membership")
      ->check(CLI::Range(8, 256));
  verify->add_flag("--keep-inconclusive", keep_inconclusive, "accept INCONCLUSIVE candidates instead of rejecting");
  verify->add_flag("--inconclusive-warning", vc.inconclusive_is_warning, "INCONCLUSIVE memberships do not fail");
  verify->add_option("--samples-out", samples_out, "also write the accepted series as JSON");
  verify->add_option("--out", out, "report path");
  verify->add_option("--format", format, "json (report) or csv (per-sample rows)")
      ->check(CLI::IsMember({"json", "csv"}));

  // extremal
  auto* extremal = app.add_subcommand("extremal", "attainment table of the extremal functions");
  std::vector<double> lambdas;
  extremal->add_option("--lambdas", lambdas, "lambda values for the U / U_s rows (default includes lambda0)");
  extremal->add_option("--grid-radii", grid_radii, "membership grid radii")->check(CLI::PositiveNumber);
  extremal->add_option("--grid-angles", grid_angles, "membership grid angles")->check(CLI::Range(3, 1 << 20));
  extremal->add_option("--out", out, "table path");
  extremal->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // lambda0
  auto* l0 = app.add_subcommand("lambda0", "root of l^2 (1+l)(3+l) = 1");
  double l0_tol = 1e-6;
  l0->add_option("--tol", l0_tol, "bisection bracket width, at most 1e-3");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Taylor coefficients of an extremal function");
  std::string name;
  std::optional<double> coeff_lambda;
  int order = 5;
  std::string coeff_format = "text";
  coeffs->add_option("name", name, "koebe, f1, ..., f6")->required();
  coeffs->add_option("--lambda", coeff_lambda, "lambda for f2 / f4");
  coeffs->add_option("--order", order, "truncation order N")->check(CLI::Range(1, 256));
  coeffs->add_option("--format", coeff_format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  // bounds
  auto* bounds = app.add_subcommand("bounds", "T3 range from coefficient estimates");
  ClassArgs bounds_class;
  bounds_class.add_to(bounds, false);
  std::optional<double> a2, a3, e0, e1;
  bounds->add_option("--a2", a2, "bound on |a2|");
  bounds->add_option("--a3", a3, "bound on |a3|");
  bounds->add_option("--e0", e0, "constant part of the |a3 - a2^2| bound");
  bounds->add_option("--e1", e1, "slope of the |a3 - a2^2| bound in |a2|^2");
  bounds->add_option("--out", out, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      vc.spec = verify_class.spec();
      vc.generator.grid = Grid::geometric(grid_radii, 0.1, 0.99, grid_angles);
      vc.generator.membership.tolerance = membership_tol;
      vc.generator.max_degree = max_degree;
      vc.generator.max_attempts = attempts;
      vc.generator.verify_order = verify_order;
      vc.generator.accept_inconclusive = keep_inconclusive;
      const VerificationReport rep = run_verify(vc);
      emit(format == "csv" ? samples_csv(rep) : to_json(rep).dump(2) + "\n", out,
           format == "csv" ? "verify.csv" : "verify.json");
      if (!samples_out.empty()) {
        auto arr = nlohmann::json::array();
        for (const auto& s : rep.samples) {
          const GeneratedMember m = generate_member(vc.spec, s.seed, vc.order, vc.generator);
          arr.push_back(to_json(m, vc.spec));
        }
        emit(arr.dump(2) + "\n", samples_out, "samples.json");
      }
      if (rep.aborted) std::cerr << "htlab: " << rep.abort_reason << "\n";
      return rep.exit_code();
    }
    if (extremal->parsed()) {
      AttainmentOptions opts;
      opts.grid = Grid::geometric(grid_radii, 0.1, 0.99, grid_angles);
      if (lambdas.empty()) lambdas = default_lambda_grid();
      const auto rows = attainment_table(lambdas, opts);
      emit(format == "csv" ? to_csv(rows) : to_json(std::span<const AttainmentRow>(rows)).dump(2) + "\n", out,
           format == "csv" ? "extremal.csv" : "extremal.json");
      const bool all = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match; });
      return all ? kExitOk : 1;
    }
    if (l0->parsed()) {
      const double root = lambda0(l0_tol);
      const int decimals = std::max(1, static_cast<int>(std::ceil(-std::log10(l0_tol))));
      std::printf("%.*f\n", decimals, root);
      return kExitOk;
    }
    if (coeffs->parsed()) {
      const PowerSeries s = expand({parse_extremal(name), coeff_lambda}, order);
      if (coeff_format == "csv") {
        std::cout << to_csv(s);
      } else if (coeff_format == "json") {
        std::cout << to_json(s).dump() << "\n";
      } else {
        for (int n = 0; n <= s.order(); ++n) std::cout << (n ? "," : "") << format_complex(s[n]);
        std::cout << "\n";
      }
      return kExitOk;
    }
    if (bounds->parsed()) {
      BoundReport rep;
      if (!bounds_class.name.empty()) {
        const ClassBounds cb = bounds_for(bounds_class.spec());
        rep.problem = cb.problem;
        rep.lambda0_used = cb.lambda0_used;
      } else {
        if (!a2 || !a3) throw DomainError("bounds needs --class or both --a2 and --a3");
        rep.problem = {*a2, *a3, ErrorProfile::affine(e0.value_or(0.0), e1.value_or(0.0))};
      }
      rep.bounds = t3_bounds(rep.problem);
      emit(to_json(rep).dump(2) + "\n", out, "bounds.json");
      return kExitOk;
    }
  } catch (const DomainError& e) {
    std::cerr << "htlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const OrderError& e) {
    std::cerr << "htlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "htlab: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
