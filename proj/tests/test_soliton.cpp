#include <doctest.h>

#include <cmath>
#include <random>
#include <thread>

#include "core/errors.hpp"
#include "core/presets.hpp"
#include "core/quadrature.hpp"
#include "core/soliton.hpp"
#include "oracles.hpp"

using namespace toric;

namespace {

// Root condition for the [-1, 2] point-base soliton vector, from the
// antiderivative of x e^{lx}: the integral vanishes iff
// e^{2l}(2l - 1) + e^{-l}(l + 1) = 0 (away from the spurious double zero
// at l = 0 introduced by the l^2 denominator).
double interval_condition(double l) {
  return std::exp(2.0 * l) * (2.0 * l - 1.0) + std::exp(-l) * (l + 1.0);
}

}  // namespace

TEST_CASE("futaki vector of symmetric data vanishes") {
  Polytope p = oracles::make_interval(-1.0, 1.0);
  Vec f = futaki_vector(p, WeightFormSet::direct(1, {}));
  CHECK(std::fabs(f[0]) <= 1e-13);
}

TEST_CASE("futaki vector of [-1,2] is the barycenter 1/2") {
  Polytope p = oracles::make_interval(-1.0, 2.0);
  Vec f = futaki_vector(p, WeightFormSet::direct(1, {}));
  CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weighted futaki value -0.05 on the symmetric interval") {
  // integral of x(2 - 0.3x) over [-1,1] is -0.2; the weight mass is 4
  Polytope p = oracles::make_interval(-1.0, 1.0);
  Vec f = futaki_vector(p, WeightFormSet::direct(1, {{{-0.3}, 2.0}}));
  double num = oracles::mom_one_form(1, -1, 1, -0.3, 2.0, 0.0);
  double den = oracles::mom_one_form(0, -1, 1, -0.3, 2.0, 0.0);
  CHECK(num == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(den == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(f[0] == doctest::Approx(-0.05).epsilon(1e-11));
  CHECK(std::fabs(f[0] + 0.05) <= 1e-10);
}

TEST_CASE("symmetric interval solves in one pass with lambda = 0") {
  Polytope p = oracles::make_interval(-1.0, 1.0);
  SolitonResult r = solve_soliton_vector(p, WeightFormSet::direct(1, {}));
  CHECK(std::fabs(r.lambda[0]) <= 1e-12);
  CHECK(std::fabs(r.c_lambda) <= 1e-12);
  CHECK(r.iterations == 1);
  CHECK(r.residual_norm <= 1e-10);
  CHECK(r.hessian_pd_all);
}

TEST_CASE("asymmetric interval matches the bisection oracle") {
  Polytope p = oracles::make_interval(-1.0, 2.0);
  SolitonResult r = solve_soliton_vector(p, WeightFormSet::direct(1, {}));

  double oracle = oracles::bisect(interval_condition, -2.0, -0.2);
  CHECK(oracle == doctest::Approx(-0.716).epsilon(2e-3));  // coarse location
  CHECK(std::fabs(r.lambda[0] - oracle) <= 1e-8);

  // the raw vanishing integral at the solution
  double raw = oracles::mom(1, -1.0, 2.0, r.lambda[0]);
  double mass = oracles::mom(0, -1.0, 2.0, r.lambda[0]);
  CHECK(std::fabs(raw) <= 1e-9 * mass);
}

TEST_CASE("square with one vertical weight form splits into a 1-D root") {
  Polytope p = oracles::make_box({-1.0, -1.0}, {1.0, 1.0});
  WeightFormSet w = WeightFormSet::direct(2, {{{0.0, -1.0}, 3.0}});  // 3 - y
  SolitonResult r = solve_soliton_vector(p, w);

  CHECK(std::fabs(r.lambda[0]) <= 1e-9);  // x -> -x symmetry
  // factored 1-D condition: integral of y (3 - y) e^{s y} over [-1, 1]
  auto cond = [](double s) { return oracles::mom_one_form(1, -1, 1, -1.0, 3.0, s); };
  double oracle = oracles::bisect(cond, 0.0, 2.0);
  CHECK(std::fabs(r.lambda[1] - oracle) <= 1e-8);
}

TEST_CASE("normalization constant examples") {
  Polytope p = oracles::make_interval(-1.0, 1.0);
  WeightFormSet w = WeightFormSet::direct(1, {});

  CHECK(normalization_constant(p, w, {0.0}) == doctest::Approx(0.0).epsilon(1e-14));

  double expect = std::log(2.0 / (std::exp(1.0) - std::exp(-1.0)));
  CHECK(normalization_constant(p, w, {1.0}) == doctest::Approx(expect).epsilon(1e-12));

  Polytope q = oracles::make_interval(-1.0, 2.0);
  SolitonResult r = solve_soliton_vector(q, w);
  double oracle = std::log(3.0 / oracles::mom(0, -1.0, 2.0, r.lambda[0]));
  CHECK(std::fabs(r.c_lambda - oracle) <= 1e-9);
  CHECK(std::fabs(normalization_constant(q, w, r.lambda) - oracle) <= 1e-9);
}

TEST_CASE("gradient and Hessian match finite differences of log I0") {
  std::mt19937_64 rng(24601);
  for (int trial = 0; trial < 6; ++trial) {
    int m = 1 + (int)(rng() % 3);
    oracles::Instance inst = oracles::random_instance(rng, m);
    Vec lam(m);
    for (int k = 0; k < m; ++k) lam[k] = 0.8 * (uniform01(rng) - 0.5);

    auto logI0 = [&](const Vec& l) {
      return std::log(weighted_moments(inst.polytope, inst.forms, l).i0);
    };
    MomentTensor t = weighted_moments(inst.polytope, inst.forms, lam);
    Vec g = scale(t.i1, 1.0 / t.i0);

    const double h = 1e-5;
    for (int k = 0; k < m; ++k) {
      Vec lp = lam, lm = lam;
      lp[k] += h;
      lm[k] -= h;
      double fd = (logI0(lp) - logI0(lm)) / (2.0 * h);
      CHECK(std::fabs(fd - g[k]) <= 1e-6 * std::max(1.0, std::fabs(g[k])));
    }

    // Hessian = covariance; compare against the Jacobian of g
    for (int k = 0; k < m; ++k) {
      Vec lp = lam, lm = lam;
      lp[k] += h;
      lm[k] -= h;
      MomentTensor tp = weighted_moments(inst.polytope, inst.forms, lp);
      MomentTensor tm = weighted_moments(inst.polytope, inst.forms, lm);
      for (int r = 0; r < m; ++r) {
        double fd = (tp.i1[r] / tp.i0 - tm.i1[r] / tm.i0) / (2.0 * h);
        double hess = t.i2[r * m + k] / t.i0 - g[r] * g[k];
        CHECK(std::fabs(fd - hess) <= 1e-5 * std::max(1.0, std::fabs(hess)));
      }
    }
  }
}

TEST_CASE("mirror-symmetric data gives lambda = 0") {
  std::mt19937_64 rng(112233);
  for (int trial = 0; trial < 4; ++trial) {
    int m = 1 + (int)(rng() % 2);
    Vec half(m);
    for (int k = 0; k < m; ++k) half[k] = 0.7 + uniform01(rng);
    Polytope p = m == 1 ? oracles::make_interval(-half[0], half[0])
                        : oracles::make_box(scale(half, -1.0), half);
    // forms in mirrored pairs keep P even
    Vec c(m);
    for (int k = 0; k < m; ++k) c[k] = 0.2 * (uniform01(rng) - 0.5);
    WeightFormSet w =
        WeightFormSet::direct(m, {{c, 1.5}, {scale(c, -1.0), 1.5}});
    SolitonResult r = solve_soliton_vector(p, w);
    for (int k = 0; k < m; ++k) CHECK(std::fabs(r.lambda[k]) <= 1e-9);
    CHECK(norm2(r.futaki) <= 1e-12);
  }
}

TEST_CASE("restarts from random points agree on the soliton vector") {
  std::mt19937_64 rng(555);
  Polytope p = oracles::make_interval(-1.0, 2.0);
  WeightFormSet w = WeightFormSet::direct(1, {});
  SolitonOptions opt;
  SolitonResult base = solve_soliton_vector(p, w, opt);
  for (int trial = 0; trial < 10; ++trial) {
    opt.start = {2.0 * uniform01(rng) - 1.0};
    SolitonResult r = solve_soliton_vector(p, w, opt);
    CHECK(std::fabs(r.lambda[0] - base.lambda[0]) <= 10.0 * opt.tol);
  }
}

TEST_CASE("translation shifts log I0 affinely and keeps the Hessian") {
  Polytope p = oracles::make_interval(-1.0, 2.0);
  WeightFormSet w = WeightFormSet::direct(1, {{{-0.2}, 1.5}});
  double v = 0.35;
  Polytope moved = oracles::make_interval(-1.0 + v, 2.0 + v);
  WeightFormSet moved_forms = WeightFormSet::direct(1, {{{-0.2}, 1.5 + 0.2 * v}});

  for (double lam : {-0.5, 0.0, 0.4}) {
    MomentTensor a = weighted_moments(p, w, {lam});
    MomentTensor b = weighted_moments(moved, moved_forms, {lam});
    // F_moved(l) = F(l) + l v
    CHECK(std::log(b.i0) ==
          doctest::Approx(std::log(a.i0) + lam * v).epsilon(1e-11));
    double ha = a.i2[0] / a.i0 - (a.i1[0] / a.i0) * (a.i1[0] / a.i0);
    double hb = b.i2[0] / b.i0 - (b.i1[0] / b.i0) * (b.i1[0] / b.i0);
    CHECK(ha == doctest::Approx(hb).epsilon(1e-9));
  }
}

TEST_CASE("futaki zero iff lambda zero, across instances") {
  Polytope sym = oracles::make_interval(-1.5, 1.5);
  WeightFormSet unit = WeightFormSet::direct(1, {});
  SolitonResult rs = solve_soliton_vector(sym, unit);
  CHECK(norm2(rs.futaki) <= 1e-12);
  CHECK(norm2(rs.lambda) <= 1e-10);

  Polytope asym = oracles::make_interval(-1.0, 2.0);
  SolitonResult ra = solve_soliton_vector(asym, unit);
  CHECK(norm2(ra.futaki) > 1e-3);
  CHECK(norm2(ra.lambda) > 1e-3);
}

TEST_CASE("non-Fano data is refused") {
  Polytope p = oracles::make_interval(-1.0, 1.0);
  WeightFormSet w = WeightFormSet::direct(1, {{{1.0}, 0.5}});
  try {
    solve_soliton_vector(p, w);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_fano);
  }
  try {
    futaki_vector(p, w);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_fano);
  }
}

TEST_CASE("origin outside the polytope interior is refused") {
  Polytope p = Polytope::validate({{1.0}, {2.0}}, {{{1.0}, -1.0}, {{-1.0}, 2.0}});
  try {
    solve_soliton_vector(p, WeightFormSet::direct(1, {}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::origin_not_interior);
  }
}

TEST_CASE("concurrent solves give the same answers as serial ones") {
  std::mt19937_64 rng(9090);
  std::vector<oracles::Instance> instances;
  for (int i = 0; i < 6; ++i)
    instances.push_back(oracles::random_instance(rng, 1 + (int)(rng() % 3)));

  std::vector<Vec> serial;
  for (const auto& inst : instances)
    serial.push_back(solve_soliton_vector(inst.polytope, inst.forms).lambda);

  std::vector<Vec> parallel(instances.size());
  std::vector<std::thread> workers;
  for (size_t i = 0; i < instances.size(); ++i)
    workers.emplace_back([&, i] {
      parallel[i] = solve_soliton_vector(instances[i].polytope, instances[i].forms).lambda;
    });
  for (auto& t : workers) t.join();

  for (size_t i = 0; i < instances.size(); ++i)
    for (size_t k = 0; k < serial[i].size(); ++k)
      CHECK(parallel[i][k] == serial[i][k]);
}

TEST_CASE("preset bases solve on compatible fibers") {
  Polytope interval = oracles::make_interval(-0.9, 1.1);
  SolitonResult r1 = solve_soliton_vector(interval, load_base_preset("rank1-single-root"));
  CHECK(r1.residual_norm <= 1e-10);

  Polytope box = oracles::make_box({-0.5, -0.4}, {0.5, 0.6});
  SolitonResult r2 = solve_soliton_vector(box, load_base_preset("cp2-base"));
  CHECK(r2.residual_norm <= 1e-10);
  CHECK(r2.hessian_pd_all);
}
