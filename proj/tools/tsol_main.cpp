// tsol: batch front end for the toric soliton library.
//
// For every problem file the pipeline runs Fano gate -> Futaki -> soliton
// vector -> normalization -> (m = 1) metric profile + residual, then writes
// a JSON report and, for 1-D fibers, a columnar profile file.
//
// Exit code: 0 all runs succeeded, 2 at least one non-Fano verdict (and no
// errors), 1 at least one error.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toric_soliton.h"

int main(int argc, char** argv) {
  CLI::App app{"toric soliton pipeline"};
  app.set_version_flag("--version", std::string(ts_version()));

  std::vector<std::string> problems;
  std::string out_dir = ".";
  std::string format = "both";
  double tol = 0.0;
  int quad_degree = 0;
  int grid = 0;
  std::uint64_t seed = 0;
  bool oracle = false;

  app.add_option("--problem", problems, "problem file (repeatable)")
      ->required()
      ->take_all();
  app.add_option("--out", out_dir, "output directory (default .)");
  auto* tol_opt = app.add_option("--tol", tol, "soliton tolerance override");
  auto* deg_opt = app.add_option("--quad-degree", quad_degree, "cubature degree cap override");
  auto* grid_opt = app.add_option("--grid", grid, "profile grid cells override");
  auto* seed_opt = app.add_option("--seed", seed, "Monte-Carlo seed override");
  app.add_flag("--oracle", oracle, "enable the Monte-Carlo cross-check block");
  app.add_option("--format", format, "output files: report, csv or both")
      ->check(CLI::IsMember({"report", "csv", "both"}));

  CLI11_PARSE(app, argc, argv);

  bool any_error = false;
  bool any_not_fano = false;

  for (const auto& path : problems) {
    ts_problem* problem = nullptr;
    ts_status st = ts_problem_load(path.c_str(), &problem);
    if (st != TS_OK) {
      std::fprintf(stderr, "%s: %s\n", path.c_str(), ts_last_error_message());
      any_error = true;
      continue;
    }
    if (tol_opt->count() > 0) ts_problem_set_tol(problem, tol);
    if (deg_opt->count() > 0) ts_problem_set_quad_degree_cap(problem, quad_degree);
    if (grid_opt->count() > 0) ts_problem_set_n_grid(problem, grid);
    if (seed_opt->count() > 0) ts_problem_set_seed(problem, seed);
    if (oracle) ts_problem_set_oracle(problem, 1);

    ts_report* report = nullptr;
    st = ts_run(problem, &report);
    if (st != TS_OK) {
      std::fprintf(stderr, "%s: %s\n", path.c_str(), ts_last_error_message());
      ts_problem_destroy(problem);
      any_error = true;
      continue;
    }

    st = ts_report_write(report, out_dir.c_str(), format.c_str());
    if (st != TS_OK) {
      std::fprintf(stderr, "%s: %s\n", ts_problem_name(problem), ts_last_error_message());
      any_error = true;
    } else {
      int code = ts_report_exit_code(report);
      std::printf("%s: %s\n", ts_problem_name(problem), ts_report_verdict(report));
      if (code == 1) any_error = true;
      if (code == 2) any_not_fano = true;
    }

    ts_report_destroy(report);
    ts_problem_destroy(problem);
  }

  if (any_error) return 1;
  if (any_not_fano) return 2;
  return 0;
}
