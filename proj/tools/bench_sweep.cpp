// Serial against OpenMP sweeps of the local and nonlocal curves. Also checks
// that both produce bit-identical rows.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "bifurq/curves.hpp"

namespace {

using bifurq::curves::CurveTable;
using bifurq::curves::Execution;

double best_of(int reps, const std::function<CurveTable()>& run, CurveTable& last) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    last = run();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, s);
  }
  return best;
}

bool same_rows(const CurveTable& a, const CurveTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].values != b.rows[i].values) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark serial and parallel curve sweeps"};
  int n = 32;
  int reps = 3;
  app.add_option("--n", n, "samples per sweep")->default_val(32);
  app.add_option("--reps", reps, "repetitions, best time reported")->default_val(3);
  CLI11_PARSE(app, argc, argv);

  const bifurq::ProblemParams params;
  struct Case {
    std::string name;
    std::function<CurveTable(Execution)> run;
  };
  const std::vector<Case> cases{
      {"local xi in [1, 1e4]",
       [&](Execution e) { return bifurq::curves::local_curve(params.p, 1.0, 1e4, n, {}, e); }},
      {"nonlocal alpha in [1e2, 1e7]",
       [&](Execution e) { return bifurq::curves::nonlocal_curve(params, 1e2, 1e7, n, {}, e); }},
  };

  std::printf("threads: %d, samples: %d, reps: %d\n", omp_get_max_threads(), n, reps);
  std::printf("%-30s %12s %12s %8s %s\n", "sweep", "serial [s]", "parallel [s]", "speedup", "rows");
  bool ok = true;
  for (const auto& c : cases) {
    CurveTable serial, parallel;
    const double ts = best_of(reps, [&] { return c.run(Execution::serial); }, serial);
    const double tp = best_of(reps, [&] { return c.run(Execution::parallel); }, parallel);
    const bool same = same_rows(serial, parallel);
    ok = ok && same && serial.all_valid();
    std::printf("%-30s %12.4f %12.4f %8.2f %s\n", c.name.c_str(), ts, tp, ts / tp,
                same ? "identical" : "DIFFER");
  }
  return ok ? 0 : 1;
}
