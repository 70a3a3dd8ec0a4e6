// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Numerical criteria run against the core library; the CLI-facing
// criteria spawn the tsol binary named by TSOL_CLI.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/errors.hpp"
#include "core/profile.hpp"
#include "core/quadrature.hpp"
#include "core/soliton.hpp"
#include "oracles.hpp"

using namespace toric;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string label) : id_(id), label_(std::move(label)) {}
  void check(bool ok, const std::string& what) {
    if (!ok) {
      failed_.push_back(what);
    }
    ++checks_;
  }
  ~Criterion() {
    if (failed_.empty()) {
      std::printf("[PASS] criterion %d: %s (%d checks)\n", id_, label_.c_str(), checks_);
    } else {
      ++g_failures;
      std::printf("[FAIL] criterion %d: %s\n", id_, label_.c_str());
      for (const auto& f : failed_) std::printf("       - %s\n", f.c_str());
    }
    std::fflush(stdout);
  }

 private:
  int id_;
  std::string label_;
  int checks_ = 0;
  std::vector<std::string> failed_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// fixed fixtures ------------------------------------------------------------

double asym_condition(double l) {
  return std::exp(2.0 * l) * (2.0 * l - 1.0) + std::exp(-l) * (l + 1.0);
}

struct Solved {
  std::string name;
  Polytope polytope;
  WeightFormSet forms;
  SolitonResult result;
};

std::vector<Solved> g_solved;  // registry feeding criterion 4

SolitonResult solve_and_register(const std::string& name, const Polytope& p,
                                 const WeightFormSet& w) {
  SolitonResult r = solve_soliton_vector(p, w);
  g_solved.push_back({name, p, w, r});
  return r;
}

// CLI helpers ---------------------------------------------------------------

const char* cli_path() { return std::getenv("TSOL_CLI"); }

int run_cli(const std::string& args) {
  std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

const char* kNotFanoProblem = R"({
  "name": "notfano", "dim": 2,
  "polytope": {"vertices": [[-1.0,-1.0],[1.0,-1.0],[1.0,1.0],[-1.0,1.0]],
               "facets": [{"normal":[1.0,0.0],"offset":1.0},{"normal":[-1.0,0.0],"offset":1.0},
                          {"normal":[0.0,1.0],"offset":1.0},{"normal":[0.0,-1.0],"offset":1.0}]},
  "forms": {"a": [[-12.566370614359172, 0.0]], "b": [0.5]}
})";

const char* kAsymProblem = R"({
  "name": "asym", "dim": 1,
  "polytope": {"vertices": [[-1.0],[2.0]],
               "facets": [{"normal":[1.0],"offset":1.0},{"normal":[-1.0],"offset":2.0}]},
  "forms": {"preset": "point"},
  "options": {"n_grid": 1024, "seed": 4242}
})";

// criteria ------------------------------------------------------------------

void criterion1() {
  Criterion c(1, "symmetric sanity: lambda = 0, round profile, tiny residual, < 1 s");
  auto t0 = std::chrono::steady_clock::now();
  for (double a : {1.0, 1.3}) {
    Polytope p = oracles::make_interval(-a, a);
    WeightFormSet w = WeightFormSet::direct(1, {});
    SolitonResult r = solve_and_register("sym" + fmt(a), p, w);
    c.check(std::fabs(r.lambda[0]) < 1e-10, "lambda not < 1e-10 at a=" + fmt(a));
    c.check(std::fabs(r.c_lambda) < 1e-10, "C not < 1e-10 at a=" + fmt(a));

    Profile1D prof = solve_profile(-a, a, w, r.lambda[0], r.c_lambda, 4096);
    double sup = 0.0;
    for (size_t i = 0; i < prof.x.size(); ++i)
      sup = std::max(sup,
                     std::fabs(prof.phi[i] - 0.5 * (a * a - prof.x[i] * prof.x[i])));
    c.check(sup < 1e-10, "phi deviates from (a^2-x^2)/2 by " + fmt(sup));

    ResidualReport res = ma_residual_1d(prof, w);
    c.check(res.sup_norm < 1e-8, "MA residual sup " + fmt(res.sup_norm) + " >= 1e-8");
  }
  double dt = seconds_since(t0);
  c.check(dt < 1.0, "runtime " + fmt(dt) + " s >= 1 s");
}

void criterion2() {
  Criterion c(2, "asymmetric 1-D soliton vs bisection oracle, closure, slopes, residual, < 5 s");
  auto t0 = std::chrono::steady_clock::now();
  Polytope p = oracles::make_interval(-1.0, 2.0);
  WeightFormSet w = WeightFormSet::direct(1, {});
  SolitonResult r = solve_and_register("asym", p, w);

  double oracle = oracles::bisect(asym_condition, -2.0, -0.2);
  c.check(std::fabs(r.lambda[0] - oracle) <= 1e-8,
          "lambda " + fmt(r.lambda[0]) + " vs oracle " + fmt(oracle));

  Profile1D prof = solve_profile(-1.0, 2.0, w, r.lambda[0], r.c_lambda, 4096);
  c.check(prof.closure_defect < 1e-9 * prof.max_psi,
          "closure defect " + fmt(prof.closure_defect) + " vs max psi " + fmt(prof.max_psi));

  SlopeCheck s = boundary_slope_check(prof);
  double tol = 10.0 / prof.n_grid;
  c.check(std::fabs(s.slope_min - 1.0) <= tol, "left slope " + fmt(s.slope_min));
  c.check(std::fabs(s.slope_max + 2.0) <= 2.0 * tol, "right slope " + fmt(s.slope_max));
  c.check(s.pass, "slope check flag");

  ResidualReport res = ma_residual_1d(prof, w);
  c.check(res.sup_norm < 1e-6, "MA residual sup " + fmt(res.sup_norm) + " >= 1e-6");

  double dt = seconds_since(t0);
  c.check(dt < 5.0, "runtime " + fmt(dt) + " s >= 5 s");
}

void criterion3() {
  Criterion c(3, "weighted base: Futaki -0.05, oracle lambda, profile gates");
  Polytope p = oracles::make_interval(-1.0, 1.0);
  WeightFormSet w = WeightFormSet::direct(1, {{{-0.3}, 2.0}});

  Vec fut = futaki_vector(p, w);
  c.check(std::fabs(fut[0] + 0.05) <= 1e-10, "Futaki " + fmt(fut[0]) + " vs -0.05");

  SolitonResult r = solve_and_register("weighted", p, w);
  auto cond = [](double l) { return oracles::mom_one_form(1, -1, 1, -0.3, 2.0, l); };
  double oracle = oracles::bisect(cond, 0.0, 1.0);
  c.check(std::fabs(r.lambda[0] - oracle) <= 1e-8,
          "lambda " + fmt(r.lambda[0]) + " vs oracle " + fmt(oracle));

  Profile1D prof = solve_profile(-1.0, 1.0, w, r.lambda[0], r.c_lambda, 4096);
  c.check(prof.closure_defect < 1e-9 * prof.max_psi, "closure gate");
  ResidualReport res = ma_residual_1d(prof, w);
  c.check(res.sup_norm < 1e-6, "MA residual sup " + fmt(res.sup_norm));
}

void criterion4() {
  Criterion c(4, "vanishing integrals: |I1(lambda*)| <= 1e-9 I0 on every solved instance");
  std::mt19937_64 rng(80801);
  for (int i = 0; i < 10; ++i) {
    int m = 1 + (int)(rng() % 3);
    oracles::Instance inst = oracles::random_instance(rng, m);
    solve_and_register("random" + std::to_string(i), inst.polytope, inst.forms);
  }
  for (const auto& s : g_solved) {
    MomentTensor t = weighted_moments(s.polytope, s.forms, s.result.lambda);
    double raw = norm2(t.i1);
    c.check(raw <= 1e-9 * t.i0,
            s.name + ": |I1| = " + fmt(raw) + " vs 1e-9 I0 = " + fmt(1e-9 * t.i0));
  }
  // 1-D instances double-checked against the antiderivative
  double lam = 0.0;
  for (const auto& s : g_solved)
    if (s.name == "asym") lam = s.result.lambda[0];
  double raw = std::fabs(oracles::mom(1, -1.0, 2.0, lam));
  c.check(raw <= 1e-9 * oracles::mom(0, -1.0, 2.0, lam), "antiderivative cross-check");
}

void criterion5() {
  Criterion c(5, "convexity/uniqueness: PD Hessians, restart agreement, FD derivative checks");
  std::mt19937_64 rng(515151);
  int instances = 0;
  while (instances < 25) {
    int m = 1 + (int)(rng() % 3);
    oracles::Instance inst = oracles::random_instance(rng, m);
    ++instances;

    SolitonOptions opt;
    SolitonResult base;
    try {
      base = solve_soliton_vector(inst.polytope, inst.forms, opt);
    } catch (const Error& e) {
      c.check(false, "instance " + std::to_string(instances) + " failed: " + e.what());
      continue;
    }
    c.check(base.hessian_pd_all, "Hessian PD at all iterates");

    // symmetric Hessian at the solution
    MomentTensor t = weighted_moments(inst.polytope, inst.forms, base.lambda);
    double asym = 0.0;
    for (int r = 0; r < m; ++r)
      for (int cc = 0; cc < m; ++cc)
        asym = std::max(asym, std::fabs(t.i2[r * m + cc] - t.i2[cc * m + r]));
    c.check(asym == 0.0, "Hessian symmetry");

    for (int restart = 0; restart < 10; ++restart) {
      opt.start.assign(m, 0.0);
      double norm = 0.0;
      for (int k = 0; k < m; ++k) {
        opt.start[k] = 2.0 * uniform01(rng) - 1.0;
        norm += opt.start[k] * opt.start[k];
      }
      double r01 = uniform01(rng);
      double rescale = std::pow(r01, 1.0 / m) / std::max(std::sqrt(norm), 1e-9);
      for (int k = 0; k < m; ++k) opt.start[k] *= rescale;  // inside the unit ball
      try {
        SolitonResult rr = solve_soliton_vector(inst.polytope, inst.forms, opt);
        double dist = norm2(sub(rr.lambda, base.lambda));
        c.check(dist <= 1e-9, "restart disagreement " + fmt(dist));
      } catch (const Error& e) {
        c.check(false, "restart solve failed: " + std::string(e.what()));
      }
    }
    opt.start.clear();

    // finite-difference gradient and Hessian at a nearby point
    Vec lam(m);
    for (int k = 0; k < m; ++k) lam[k] = 0.5 * (uniform01(rng) - 0.5);
    MomentTensor tt = weighted_moments(inst.polytope, inst.forms, lam);
    Vec g = scale(tt.i1, 1.0 / tt.i0);
    const double h = 1e-5;
    auto logI0 = [&](const Vec& l) {
      return std::log(weighted_moments(inst.polytope, inst.forms, l).i0);
    };
    for (int k = 0; k < m; ++k) {
      Vec lp = lam, lm = lam;
      lp[k] += h;
      lm[k] -= h;
      double fd = (logI0(lp) - logI0(lm)) / (2.0 * h);
      c.check(std::fabs(fd - g[k]) <= 1e-6 * std::max(1.0, std::fabs(g[k])),
              "gradient FD mismatch " + fmt(std::fabs(fd - g[k])));
      MomentTensor tp = weighted_moments(inst.polytope, inst.forms, lp);
      MomentTensor tm = weighted_moments(inst.polytope, inst.forms, lm);
      for (int r = 0; r < m; ++r) {
        double fdh = (tp.i1[r] / tp.i0 - tm.i1[r] / tm.i0) / (2.0 * h);
        double hess = tt.i2[r * m + k] / tt.i0 - g[r] * g[k];
        c.check(std::fabs(fdh - hess) <= 1e-5 * std::max(1.0, std::fabs(hess)),
                "Hessian FD mismatch " + fmt(std::fabs(fdh - hess)));
      }
    }
  }
}

void criterion6() {
  Criterion c(6, "integration oracles: MC agreement at 1e7 samples, polynomial exactness");
  std::mt19937_64 rng(606060);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + (int)(rng() % 3);
    oracles::Instance inst = oracles::random_instance(rng, m);
    Vec lam(m);
    for (int k = 0; k < m; ++k) lam[k] = uniform01(rng) - 0.5;
    MomentTensor t = weighted_moments(inst.polytope, inst.forms, lam);
    McResult mc = mc_oracle(
        inst.polytope,
        [&](const Vec& x) { return std::exp(dot(lam, x)) * inst.forms.eval_product(x); },
        10000000, 424200 + trial);
    double sigma = mc.stderr_est > 0 ? std::fabs(mc.estimate - t.i0) / mc.stderr_est : 0.0;
    c.check(sigma <= 4.0, "trial " + std::to_string(trial) + " off by " + fmt(sigma) +
                              " stderr");
  }

  // polynomial exactness on random simplices: barycentric monomials have
  // exact integrals vol * m! * prod(k!) / (m + sum k)!
  for (int m = 1; m <= 3; ++m) {
    Simplex s;
    s.dim = m;
    do {
      s.vertices.clear();
      for (int v = 0; v <= m; ++v) {
        Vec pnt(m);
        for (int k = 0; k < m; ++k) pnt[k] = 3.0 * uniform01(rng) - 1.5;
        s.vertices.push_back(pnt);
      }
    } while (s.volume() < 0.05);
    for (int index = 2; index <= 4; ++index) {
      int degree = 2 * index + 1;
      // integrate b_0^degree exactly
      Mat a((m + 1) * (m + 1), 1.0);
      for (int col = 0; col <= m; ++col)
        for (int row = 0; row < m; ++row)
          a[(row + 1) * (m + 1) + col] = s.vertices[col][row];
      auto bary0 = [&](const Vec& x) {
        Mat aa = a;
        Vec rhs(m + 1, 1.0);
        for (int r = 0; r < m; ++r) rhs[r + 1] = x[r];
        Vec b;
        solve_linear(aa, m + 1, rhs, b, 1e-14);
        return std::pow(b[0], degree);
      };
      double got = gm_integrate(s, index, bary0);
      double mfact = 1.0, kfact = 1.0, dfact = 1.0;
      for (int j = 2; j <= m; ++j) mfact *= j;
      for (int j = 2; j <= degree; ++j) kfact *= j;
      for (int j = 2; j <= m + degree; ++j) dfact *= j;
      double expect = s.volume() * mfact * kfact / dfact;
      c.check(std::fabs(got - expect) <= 1e-12 * std::max(expect, s.volume()),
              "exactness m=" + std::to_string(m) + " degree " + std::to_string(degree));
    }
  }
}

void criterion7(const fs::path& dir) {
  Criterion c(7, "Fano gate through the CLI: exit 2, violating pair, positivity witness");
  if (!cli_path()) {
    c.check(false, "TSOL_CLI is not set");
    return;
  }
  write_file(dir / "notfano.json", kNotFanoProblem);
  int code = run_cli("--problem " + (dir / "notfano.json").string() + " --out " +
                     (dir / "out7").string());
  c.check(code == 2, "exit code " + std::to_string(code) + " != 2");

  json rep = read_json(dir / "out7" / "notfano.report.json")["report"];
  c.check(rep["fano"]["is_fano"] == false, "is_fano should be false");
  c.check(rep["verdict"] == "no Kahler-Ricci soliton (not Fano)", "verdict text");
  bool pair_ok = rep["fano"]["violations"].size() == 2;
  for (const auto& v : rep["fano"]["violations"]) {
    int vi = v["vertex"].get<int>();
    pair_ok = pair_ok && v["form"] == 0 && (vi == 0 || vi == 3);
  }
  c.check(pair_ok, "violating (form, vertex) pairs");

  // positivity witness on a Fano run: weight bounds finite and positive
  write_file(dir / "asym.json", kAsymProblem);
  code = run_cli("--problem " + (dir / "asym.json").string() + " --out " +
                 (dir / "out7").string());
  c.check(code == 0, "Fano run exit code " + std::to_string(code));
  json rep2 = read_json(dir / "out7" / "asym.report.json")["report"];
  double lo = rep2["fano"]["weight_min_bound"].get<double>();
  double hi = rep2["fano"]["weight_max_bound"].get<double>();
  c.check(lo > 0.0 && std::isfinite(lo), "lower weight bound " + fmt(lo));
  c.check(hi >= lo && std::isfinite(hi), "upper weight bound " + fmt(hi));
}

void criterion8() {
  Criterion c(8, "grid convergence: MA residual drops at order >= 2 over 512 -> 4096");
  WeightFormSet w = WeightFormSet::direct(1, {});
  Polytope p = oracles::make_interval(-1.0, 2.0);
  double lam = solve_soliton_vector(p, w).lambda[0];

  // grid-limited reconstruction: composite Simpson for psi on each grid
  auto sup_at = [&](int n) {
    Profile1D prof = solve_profile(-1.0, 2.0, w, lam, 0.0, n);
    auto g = [&](double s) { return s * std::exp(lam * s); };
    double cum = 0.0;
    for (int i = 1; i <= n; ++i) {
      double a = prof.x[i - 1], b = prof.x[i];
      cum += prof.spacing / 6.0 * (g(a) + 4.0 * g(0.5 * (a + b)) + g(b));
      prof.psi[i] = -std::exp(-lam * prof.x[i]) * cum;
      prof.phi[i] = prof.psi[i];
    }
    return ma_residual_1d(prof, w).sup_norm;
  };
  std::vector<double> sups;
  for (int n : {512, 1024, 2048, 4096}) sups.push_back(sup_at(n));
  for (size_t i = 0; i + 1 < sups.size(); ++i) {
    double order = std::log2(sups[i] / sups[i + 1]);
    c.check(order >= 2.0, "doubling " + std::to_string(i) + " order " + fmt(order));
  }

  // independent route: central differences of the exact symmetric potential
  // on a uniform fiber-coordinate grid
  double a = 1.2;
  Polytope box = oracles::make_interval(-a, a);
  auto grid_sup = [&](int nodes) {
    GridField u;
    u.dim = 1;
    u.shape = {nodes};
    u.origin = {-1.5};
    u.spacing = {3.0 / (nodes - 1)};
    u.values.resize(nodes);
    for (int i = 0; i < nodes; ++i) {
      double t = u.origin[0] + i * u.spacing[0];
      u.values[i] = 2.0 * std::log(std::cosh(0.5 * a * t)) - std::log(0.5 * a * a);
    }
    return ma_residual_grid(u, {0.0}, 0.0, w, box).sup_norm;
  };
  double s1 = grid_sup(129), s2 = grid_sup(257), s3 = grid_sup(513);
  c.check(std::log2(s1 / s2) >= 1.85, "fiber-grid doubling 1 order " + fmt(std::log2(s1 / s2)));
  c.check(std::log2(s2 / s3) >= 1.85, "fiber-grid doubling 2 order " + fmt(std::log2(s2 / s3)));
}

void criterion9(const fs::path& dir) {
  Criterion c(9, "determinism: byte-identical hashable report sections");
  if (!cli_path()) {
    c.check(false, "TSOL_CLI is not set");
    return;
  }
  write_file(dir / "asym.json", kAsymProblem);
  std::string base = "--problem " + (dir / "asym.json").string() + " --oracle --out ";
  int c1 = run_cli(base + (dir / "da").string());
  int c2 = run_cli(base + (dir / "db").string());
  c.check(c1 == 0 && c2 == 0, "runs failed");
  json a = read_json(dir / "da" / "asym.report.json");
  json b = read_json(dir / "db" / "asym.report.json");
  c.check(a["report"].dump() == b["report"].dump(), "hashable sections differ");
  c.check(a["report_digest"] == b["report_digest"], "digests differ");
  c.check(a["report"]["input_hash"] == b["report"]["input_hash"], "input hashes differ");
}

}  // namespace

int main() {
  fs::path dir = fs::temp_directory_path() / "tsol_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  auto t0 = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7(dir);
  criterion8();
  criterion9(dir);

  std::printf("%s: %d criterion(s) failed (%.1f s total)\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", g_failures,
              seconds_since(t0));
  fs::remove_all(dir);
  return g_failures == 0 ? 0 : 1;
}
