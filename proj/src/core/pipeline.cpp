#include "core/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "core/errors.hpp"
#include "core/presets.hpp"
#include "core/quadrature.hpp"
#include "core/soliton.hpp"

namespace toric {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json num_or_inf(double v) {
  if (std::isfinite(v)) return json(v);
  return json(v > 0 ? "inf" : "-inf");
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (double c : v) a.push_back(c);
  return a;
}

class StageTimer {
 public:
  explicit StageTimer(json& sink) : sink_(sink) {}
  template <typename F>
  auto run(const std::string& stage, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    struct Guard {
      json& sink;
      std::string stage;
      std::chrono::steady_clock::time_point t0;
      ~Guard() {
        auto t1 = std::chrono::steady_clock::now();
        sink[stage] = std::chrono::duration<double, std::milli>(t1 - t0).count();
      }
    } guard{sink_, stage, t0};
    return f();
  }

 private:
  json& sink_;
};

std::string sanitize_name(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out.push_back(ok ? c : '_');
  }
  return out.empty() ? std::string("problem") : out;
}

}  // namespace

RunReport run_pipeline(const ProblemSpec& spec) {
  RunReport out;
  out.problem_name = spec.name;
  json report;
  json timings;
  StageTimer timer(timings);

  report["schema"] = kReportSchema;
  report["artifact_version"] = kArtifactVersion;
  report["problem"] = spec.name;
  report["spec"] = canonical_spec_json(spec);
  report["input_hash"] = input_hash(spec);

  std::string stage = "validate";
  try {
    Polytope poly = timer.run("validate", [&] {
      return Polytope::validate(spec.vertices, spec.facets);
    });

    stage = "forms";
    WeightFormSet forms = timer.run("forms", [&] {
      return spec.use_preset ? load_base_preset(spec.preset)
                             : WeightFormSet::from_raw(spec.dim, spec.raw_a, spec.raw_b);
    });
    if (forms.dim() != poly.dim())
      fail(ErrorCode::dimension_mismatch, "form set and polytope dimensions differ");

    stage = "fano";
    FanoReport fano = timer.run("fano", [&] { return fano_check(poly, forms); });
    json jf;
    jf["is_fano"] = fano.is_fano;
    jf["margin"] = num_or_inf(fano.margin);
    json viols = json::array();
    for (const auto& v : fano.violations)
      viols.push_back({{"form", v.form_index}, {"vertex", v.vertex_index}, {"value", v.value}});
    jf["violations"] = viols;
    if (fano.is_fano) {
      ProductBounds pb = product_bounds(poly, forms);
      jf["weight_min_bound"] = pb.lower;
      jf["weight_max_bound"] = pb.upper;
    }
    report["fano"] = jf;

    if (!fano.is_fano) {
      out.verdict = "no Kahler-Ricci soliton (not Fano)";
      report["verdict"] = out.verdict;
      out.exit_code = 2;
      out.root = {{"report", report},
                  {"report_digest", fnv1a64_hex(report.dump())},
                  {"timings_ms", timings}};
      return out;
    }

    MomentOptions mopt;
    mopt.degree_cap = spec.options.quad_degree_cap;

    stage = "futaki";
    Vec futaki = timer.run("futaki", [&] { return futaki_vector(poly, forms, mopt); });
    double ke_threshold = 1000.0 * spec.options.tol * std::max(1.0, poly.diameter());
    bool ke_case = norm2(futaki) <= ke_threshold;
    report["futaki"] = {{"vector", vec_to_json(futaki)},
                        {"norm", norm2(futaki)},
                        {"ke_threshold", ke_threshold},
                        {"kahler_einstein", ke_case}};

    stage = "soliton";
    SolitonOptions sopt;
    sopt.tol = spec.options.tol;
    sopt.degree_cap = spec.options.quad_degree_cap;
    SolitonResult sol = timer.run("soliton", [&] {
      return solve_soliton_vector(poly, forms, sopt);
    });
    report["soliton"] = {{"lambda", vec_to_json(sol.lambda)},
                         {"c_lambda", sol.c_lambda},
                         {"iterations", sol.iterations},
                         {"residual_norm", sol.residual_norm},
                         {"theta", {{"slope", vec_to_json(sol.lambda)},
                                    {"intercept", sol.c_lambda}}}};

    if (spec.dim == 1) {
      stage = "profile";
      double x_min = poly.bbox_lo()[0];
      double x_max = poly.bbox_hi()[0];
      Profile1D prof = timer.run("profile", [&] {
        return solve_profile(x_min, x_max, forms, sol.lambda[0], sol.c_lambda,
                             spec.options.n_grid, 1e-9);
      });
      SlopeCheck slopes = boundary_slope_check(prof);
      ResidualReport resid = ma_residual_1d(prof, forms);
      double min_phi = std::numeric_limits<double>::infinity();
      for (int i = 1; i < prof.n_grid; ++i) min_phi = std::min(min_phi, prof.phi[i]);
      report["profile"] = {
          {"supported", true},
          {"n_grid", prof.n_grid},
          {"closure_defect", prof.closure_defect},
          {"max_psi", prof.max_psi},
          {"min_phi_interior", min_phi},
          {"slopes",
           {{"slope_min", slopes.slope_min},
            {"slope_max", slopes.slope_max},
            {"expected_min", slopes.expected_min},
            {"expected_max", slopes.expected_max},
            {"pass", slopes.pass}}},
          {"residual",
           {{"sup_norm", resid.sup_norm},
            {"l2_norm", resid.l2_norm},
            {"worst_x", resid.worst_point[0]},
            {"points", resid.points_evaluated}}}};
      out.profile = std::move(prof);
    } else {
      report["profile"] = {{"supported", false},
                           {"note", "profile: unsupported for m>1"}};
    }

    if (spec.options.oracle) {
      stage = "oracle";
      timer.run("oracle", [&] {
        const long long n_samples = 1000000;
        MomentTensor t = weighted_moments(poly, forms, sol.lambda, mopt);
        json checks = json::array();
        auto push_check = [&](const std::string& label, double quad,
                              const std::function<double(const Vec&)>& f, uint64_t seed) {
          McResult mc = mc_oracle(poly, f, n_samples, seed);
          double sigma = mc.stderr_est > 0.0
                             ? std::fabs(quad - mc.estimate) / mc.stderr_est
                             : 0.0;
          checks.push_back({{"quantity", label},
                            {"quadrature", quad},
                            {"estimate", mc.estimate},
                            {"stderr", mc.stderr_est},
                            {"sigma", sigma},
                            {"pass", sigma <= 4.0}});
        };
        const Vec lam = sol.lambda;
        push_check("I0(lambda)", t.i0,
                   [&](const Vec& x) { return std::exp(dot(lam, x)) * forms.eval_product(x); },
                   spec.options.seed);
        for (int k = 0; k < spec.dim; ++k)
          push_check("I1[" + std::to_string(k) + "](lambda)", t.i1[k],
                     [&, k](const Vec& x) {
                       return x[k] * std::exp(dot(lam, x)) * forms.eval_product(x);
                     },
                     spec.options.seed + 1 + k);
        report["oracle"] = {{"samples", n_samples},
                            {"seed", spec.options.seed},
                            {"checks", checks}};
        return 0;
      });
    }

    out.verdict = ke_case
                      ? "Fano: Kahler-Ricci soliton data computed; Kahler-Einstein case "
                        "(Futaki vanishes)"
                      : "Fano: Kahler-Ricci soliton data computed";
    report["verdict"] = out.verdict;
    out.exit_code = 0;
  } catch (const Error& e) {
    report["error"] = {{"stage", stage},
                       {"code", error_code_name(e.code())},
                       {"message", e.what()}};
    out.verdict = std::string("error at stage ") + stage;
    report["verdict"] = out.verdict;
    out.exit_code = 1;
  }

  out.root = {{"report", report},
              {"report_digest", fnv1a64_hex(report.dump())},
              {"timings_ms", timings}};
  return out;
}

std::vector<std::string> emit_report(const RunReport& report, const std::string& out_dir,
                                     const std::string& format) {
  if (format != "report" && format != "csv" && format != "both")
    fail(ErrorCode::invalid_argument, "format must be report, csv or both");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    fail(ErrorCode::io_error, "output directory '" + out_dir + "' is not usable");

  std::vector<std::string> written;
  std::string base = sanitize_name(report.problem_name);

  if (format == "report" || format == "both") {
    fs::path path = fs::path(out_dir) / (base + ".report.json");
    std::ofstream f(path);
    if (!f) fail(ErrorCode::io_error, "cannot write '" + path.string() + "'");
    f << report.root.dump(2) << "\n";
    if (!f.good()) fail(ErrorCode::io_error, "write failed for '" + path.string() + "'");
    written.push_back(path.string());
  }

  if ((format == "csv" || format == "both") && report.profile.has_value()) {
    const Profile1D& p = *report.profile;
    fs::path path = fs::path(out_dir) / (base + ".profile.csv");
    std::ofstream f(path);
    if (!f) fail(ErrorCode::io_error, "cannot write '" + path.string() + "'");
    f << "x,phi,u,t\n";
    for (size_t i = 0; i < p.x.size(); ++i)
      f << format_g17(p.x[i]) << ',' << format_g17(p.phi[i]) << ',' << format_g17(p.u[i])
        << ',' << format_g17(p.t[i]) << "\n";
    if (!f.good()) fail(ErrorCode::io_error, "write failed for '" + path.string() + "'");
    written.push_back(path.string());
  }
  return written;
}

}  // namespace toric
