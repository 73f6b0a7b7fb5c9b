// bifurq: bifurcation curves of the Kirchhoff logistic problem.
//
//   bifurq constants      --p 3 --q 0.333 [--json]
//   bifurq local-curve    --p 3 --min 1 --max 1000 --n 16 [--out f.csv] [--json f.json] [--svg f.svg]
//   bifurq nonlocal-curve --p 3 --q 0.333 --min 100 --max 1e6 --n 13 [...]
//   bifurq profile        --p 3 --gamma 20 --n 101 [...]
//   bifurq verify         [--p 3 --q 0.333] [--level fast|full] [--json]
//
// Exit status: 0 ok, 1 failed rows or failed checks, 2 bad usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bifurq/asymptotics.hpp"
#include "bifurq/curve_io.hpp"
#include "bifurq/curves.hpp"
#include "bifurq/error.hpp"
#include "bifurq/nonlocal.hpp"
#include "bifurq/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outputs {
  std::string csv;
  std::string json;
  std::string svg;
};

bifurq::Tolerances tolerances(std::optional<double> rel) {
  try {
    return bifurq::Tolerances::with_rel(rel);
  } catch (const bifurq::DomainError& e) {
    throw UsageError(e.what());
  }
}

bifurq::ProblemParams problem(double p, double q) {
  try {
    return bifurq::ProblemParams::make(p, q);
  } catch (const bifurq::DomainError& e) {
    throw UsageError(e.what());
  }
}

int emit(const bifurq::curves::CurveTable& table, const Outputs& out,
         const bifurq::io::SvgOptions& svg) {
  if (out.csv.empty()) {
    bifurq::io::write_csv(table, std::cout);
  } else {
    std::ostringstream s;
    bifurq::io::write_csv(table, s);
    bifurq::io::write_file(out.csv, s.str());
  }
  if (!out.json.empty()) bifurq::io::write_file(out.json, bifurq::io::to_json(table) + "\n");
  if (!out.svg.empty()) {
    std::ostringstream s;
    bifurq::io::write_svg(table, svg, s);
    bifurq::io::write_file(out.svg, s.str());
  }
  for (const auto& row : table.rows) {
    if (!row.valid) std::cerr << "row " << row.values[0] << " failed: " << row.error << '\n';
  }
  return table.all_valid() ? kOk : kFailed;
}

void add_outputs(CLI::App* cmd, Outputs& out) {
  cmd->add_option("--out", out.csv, "CSV output path (default: stdout)");
  cmd->add_option("--json", out.json, "also write JSON to this path");
  cmd->add_option("--svg", out.svg, "also write an SVG plot to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation curves of the Kirchhoff logistic problem"};
  app.require_subcommand(1);

  double p = 3.0;
  double q = 1.0 / 3.0;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  double gamma = 20.0;
  std::optional<double> rel;
  bool as_json = false;
  bool serial = false;
  std::string level = "fast";
  Outputs out;

  auto* constants = app.add_subcommand("constants", "asymptotic constants and threshold");
  constants->add_option("--p", p, "exponent p > 1");
  constants->add_option("--q", q, "Kirchhoff exponent, 0 < q < (p-1)/(p+1)");
  constants->add_flag("--json", as_json, "print JSON");
  constants->add_option("--tol", rel, "relative quadrature tolerance");

  auto* local_cmd = app.add_subcommand("local-curve", "gamma against xi for the local problem");
  local_cmd->add_option("--p", p, "exponent p > 1");
  local_cmd->add_option("--min", lo, "smallest xi")->default_val(1.0);
  local_cmd->add_option("--max", hi, "largest xi")->default_val(1000.0);
  local_cmd->add_option("--n", n, "number of samples")->default_val(16);
  local_cmd->add_option("--tol", rel, "relative quadrature tolerance");
  local_cmd->add_flag("--serial", serial, "evaluate rows on one thread");
  add_outputs(local_cmd, out);

  auto* nonlocal_cmd = app.add_subcommand("nonlocal-curve", "lambda against alpha");
  nonlocal_cmd->add_option("--p", p, "exponent p > 1");
  nonlocal_cmd->add_option("--q", q, "Kirchhoff exponent");
  nonlocal_cmd->add_option("--min", lo, "smallest alpha")->default_val(100.0);
  nonlocal_cmd->add_option("--max", hi, "largest alpha")->default_val(1e6);
  nonlocal_cmd->add_option("--n", n, "number of samples")->default_val(13);
  nonlocal_cmd->add_option("--tol", rel, "relative quadrature tolerance");
  nonlocal_cmd->add_flag("--serial", serial, "evaluate rows on one thread");
  add_outputs(nonlocal_cmd, out);

  auto* profile_cmd = app.add_subcommand("profile", "solution profile w(x) at fixed gamma");
  profile_cmd->add_option("--p", p, "exponent p > 1");
  profile_cmd->add_option("--gamma", gamma, "eigenvalue gamma > pi^2");
  profile_cmd->add_option("--n", n, "samples on [0, 1/2]")->default_val(101);
  profile_cmd->add_option("--tol", rel, "relative quadrature tolerance");
  add_outputs(profile_cmd, out);

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--p", p, "exponent p > 1");
  verify_cmd->add_option("--q", q, "Kirchhoff exponent");
  verify_cmd->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify_cmd->add_flag("--json", as_json, "print JSON");
  verify_cmd->add_option("--tol", rel, "relative quadrature tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*constants) {
      const auto params = problem(p, q);
      const auto tol = tolerances(rel);
      const auto model = bifurq::asym::constants(params);
      const auto thr = bifurq::nonlocal::xi_threshold(params, tol);
      if (as_json) {
        nlohmann::ordered_json j;
        j["p"] = params.p;
        j["q"] = params.q;
        j["C1"] = model.C1;
        j["k"] = model.k;
        j["B"] = model.B;
        j["lambda_exponent"] = model.lambda_exponent;
        j["xi0"] = thr.xi0;
        j["alpha0"] = thr.alpha0;
        j["h0"] = thr.h0;
        std::cout << j.dump(2) << '\n';
      } else {
        std::printf("p                %.17g\nq                %.17g\n", params.p, params.q);
        std::printf("C1               %.12g\nk                %.12g\nB                %.12g\n", model.C1,
                    model.k, model.B);
        std::printf("lambda_exponent  %.12g\nxi0              %.12g\nalpha0           %.12g\n",
                    model.lambda_exponent, thr.xi0, thr.alpha0);
      }
      return kOk;
    }

    const auto exec = serial ? bifurq::curves::Execution::serial : bifurq::curves::Execution::parallel;

    if (*local_cmd) {
      if (!(p > 1.0)) throw UsageError("exponent p must exceed 1");
      if (!(lo > 0.0) || !(hi > lo) || n < 2) throw UsageError("need 0 < --min < --max and --n >= 2");
      const auto tol = tolerances(rel);
      const auto table = bifurq::curves::local_curve(p, lo, hi, n, tol, exec);
      return emit(table, out, {"xi", "gamma", true, true});
    }

    if (*nonlocal_cmd) {
      const auto params = problem(p, q);
      if (!(lo > 0.0) || !(hi > lo) || n < 2) throw UsageError("need 0 < --min < --max and --n >= 2");
      const auto tol = tolerances(rel);
      try {
        const auto table = bifurq::curves::nonlocal_curve(params, lo, hi, n, tol, exec);
        return emit(table, out, {"alpha", "lambda", true, true});
      } catch (const bifurq::BelowThresholdError& e) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", e.threshold());
        throw UsageError(std::string(e.what()) + "\nalpha0 = " + buf);
      }
    }

    if (*profile_cmd) {
      if (!(p > 1.0)) throw UsageError("exponent p must exceed 1");
      if (!(gamma > 9.869604401089358)) throw UsageError("--gamma must exceed pi^2");
      if (n < 2) throw UsageError("--n must be at least 2");
      const auto tol = tolerances(rel);
      const auto table = bifurq::curves::profile_table(p, gamma, n, tol);
      return emit(table, out, {"x", "w", false, false});
    }

    if (*verify_cmd) {
      const auto params = problem(p, q);
      const auto tol = tolerances(rel);
      const auto lvl = bifurq::verify::parse_level(level);
      if (!lvl) throw UsageError("unknown level '" + level + "'");
      const auto report = bifurq::verify::run_acceptance(params, *lvl, tol);
      if (as_json) {
        std::cout << bifurq::verify::to_json(report) << '\n';
      } else {
        bifurq::verify::print_table(report, std::cout);
      }
      return report.overall() ? kOk : kFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
