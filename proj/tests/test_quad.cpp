#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokeslab/quad.hpp"

using namespace stokeslab;

namespace {

QuadSpec tight() {
  QuadSpec s;
  s.rel_tol = 1e-10;
  s.abs_tol = 1e-14;
  return s;
}

// Brute-force graded-mesh trapezoid oracle for integrals with a power
// singularity at the lower endpoint: nodes s_k = b*(k/m)^grade.
double graded_trapezoid_oracle(const std::function<double(double)>& f,
                               double b, double grade, int m) {
  double acc = 0.0;
  double prev_s = 0.0, prev_f = 0.0;
  bool have_prev = false;
  for (int k = 1; k <= m; ++k) {
    double s = b * std::pow(double(k) / m, grade);
    double fv = f(s);
    if (have_prev) acc += 0.5 * (fv + prev_f) * (s - prev_s);
    prev_s = s;
    prev_f = fv;
    have_prev = true;
  }
  return acc;
}

}  // namespace

TEST_CASE("singular endpoint integrals match closed forms") {
  QuadSpec spec = tight();
  auto r1 = integrate_singular_1d([](double y) { return std::pow(y, -0.4); },
                                  0.0, 1.0, -0.4, Endpoint::lower, spec);
  CHECK(std::fabs(r1.value - 5.0 / 3.0) < 1e-8);

  auto r2 = integrate_singular_1d(
      [](double t) { return std::pow(t - 0.5, -0.9); }, 0.5, 1.0, -0.9,
      Endpoint::lower, spec);
  CHECK(std::fabs(r2.value - 9.3303299153680742) < 1e-6);

  // Substitution is exact for pure powers.
  for (double p : {-0.9, -0.5, -0.1}) {
    auto r = integrate_singular_1d(
        [p](double s) { return std::pow(s, p); }, 0.0, 1.0, p,
        Endpoint::lower, spec);
    double truth = 1.0 / (1.0 + p);
    CHECK(std::fabs(r.value - truth) <= 1e-14 * std::fabs(truth));
  }

  // Upper-endpoint variant.
  auto r3 = integrate_singular_1d(
      [](double s) { return std::pow(1.0 - s, -0.5); }, 0.0, 1.0, -0.5,
      Endpoint::upper, spec);
  CHECK(std::fabs(r3.value - 2.0) < 1e-12);
}

TEST_CASE("singular integral against graded-mesh oracle") {
  QuadSpec spec = tight();
  auto f = [](double y) { return std::pow(y, -0.4) * std::exp(-y * y); };
  auto r = integrate_singular_1d(f, 0.0, 2.0, -0.4, Endpoint::lower, spec);
  double oracle = graded_trapezoid_oracle(f, 2.0, 3.0, 1000000);
  CHECK(std::fabs(r.value - oracle) < 1e-6);
  CHECK(std::fabs(r.value - 1.4927592537814566) < 1e-9);  // frozen
}

TEST_CASE("domain checks") {
  QuadSpec spec = tight();
  CHECK_THROWS_AS(integrate_singular_1d([](double) { return 1.0; }, 0, 1,
                                        -1.0, Endpoint::lower, spec),
                  std::domain_error);
  CHECK_THROWS_AS(integrate_singular_1d([](double) { return 1.0; }, 0, 1, 0.5,
                                        Endpoint::lower, spec),
                  std::domain_error);
  QuadSpec tiny = spec;
  tiny.max_subdivisions = 1;
  tiny.rel_tol = 1e-14;
  tiny.abs_tol = 1e-300;
  bool threw = false;
  try {
    integrate_1d([](double x) { return std::pow(std::fabs(x - 0.3141), -0.5); },
                 0.0, 1.0, tiny);
  } catch (const AccuracyError& e) {
    threw = true;
    CHECK(e.best_estimate.error_estimate > 0.0);
    CHECK(std::isfinite(e.best_estimate.value));
  }
  CHECK(threw);
}

TEST_CASE("nd cubature basics") {
  QuadSpec spec = tight();
  auto one = [](const Vec&) { return 1.0; };
  auto r = integrate_nd(one, {{0, 1}, {0, 1}}, spec);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));

  // 2-d heat-kernel mass.
  double t = 0.3;
  auto gauss2 = [t](const Vec& z) {
    return std::exp(-(z[0] * z[0] + z[1] * z[1]) / (4.0 * t)) /
           (4.0 * M_PI * t);
  };
  double half = 8.0 * std::sqrt(t);
  auto m = integrate_nd(gauss2, {{-half, half}, {-half, half}}, spec);
  CHECK(std::fabs(m.value - 1.0) < 1e-5);
}

TEST_CASE("monte carlo fallback is deterministic and sane") {
  QuadSpec spec;
  spec.mc_samples = 200000;
  spec.seed = 42;
  auto f = [](const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  };
  std::vector<std::pair<double, double>> box(5, {0.0, 1.0});
  auto a = integrate_nd(f, box, spec);
  auto b = integrate_nd(f, box, spec);
  CHECK(a.value == b.value);  // bit identical
  CHECK(std::fabs(a.value - 2.5) < 5.0 * a.error_estimate + 1e-3);
  CHECK(a.error_estimate > 0.0);
}

TEST_CASE("tangential convolution: mass, moment, determinism") {
  QuadSpec spec = tight();
  Vec x = {1.2, -0.7};
  auto one = [](const Vec&) { return 1.0; };
  auto r = convolve_tangential(x, 0.37, one, spec);
  CHECK(std::fabs(r.value - 1.0) < 1e-6);

  auto lin = [](const Vec& z) { return z[0]; };
  auto r2 = convolve_tangential(x, 0.25, lin, spec);
  CHECK(std::fabs(r2.value - x[0]) < 1e-6);

  auto r3 = convolve_tangential(x, 0.25, lin, spec);
  CHECK(r2.value == r3.value);
}

TEST_CASE("error estimates are honest on a closed-form library") {
  QuadSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-13;
  struct Entry {
    double value, truth, err;
  };
  std::vector<Entry> lib;
  auto push1d = [&](const std::function<double(double)>& f, double a, double b,
                    double truth) {
    auto r = integrate_1d(f, a, b, spec);
    lib.push_back({r.value, truth, r.error_estimate});
  };
  auto push_sing = [&](const std::function<double(double)>& f, double a,
                       double b, double p, double truth) {
    auto r = integrate_singular_1d(f, a, b, p, Endpoint::lower, spec);
    lib.push_back({r.value, truth, r.error_estimate});
  };

  push1d([](double x) { return x * x; }, 0, 1, 1.0 / 3.0);
  push1d([](double x) { return std::exp(x); }, 0, 1, 1.7182818284590452);
  push1d([](double x) { return std::sin(x); }, 0, M_PI, 2.0);
  push1d([](double x) { return 1.0 / (1.0 + x * x); }, 0, 1, M_PI / 4.0);
  push1d([](double x) { return std::log(x); }, 1e-14, 1, -1.0);
  push1d([](double x) { return std::exp(-x * x); }, -8, 8,
         1.7724538509055160);
  push1d([](double x) { return 1.0 + std::cos(x); }, 0, 2 * M_PI, 2 * M_PI);
  push1d([](double x) { return 1.0 / (0.01 + x * x); }, 0, 1,
         14.711276743037346);
  push1d([](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3.0);
  push1d([](double x) { return std::sin(20.0 * x); }, 0, 1,
         0.029595896909330401);
  push1d([](double x) { return std::fabs(x - 1.0); }, 0, 2, 1.0);
  push1d([](double x) { return std::pow(x, 3.5); }, 0, 1, 1.0 / 4.5);
  push_sing([](double x) { return std::pow(x, -0.5); }, 0, 1, -0.5, 2.0);
  push_sing([](double x) { return std::pow(x, -0.9); }, 0, 1, -0.9, 10.0);
  push_sing([](double x) { return std::pow(x, -0.1); }, 0, 1, -0.1,
            1.1111111111111111);
  push_sing([](double x) { return std::cos(x) / std::sqrt(x); }, 0, 1, -0.5,
            1.8090484758005386);
  {
    auto r = integrate_nd([](const Vec& x) { return x[0] * x[1]; },
                          {{0, 1}, {0, 1}}, spec);
    lib.push_back({r.value, 0.25, r.error_estimate});
  }
  {
    auto r = integrate_nd([](const Vec& x) { return x[0] * x[1] * x[2]; },
                          {{0, 1}, {0, 1}, {0, 1}}, spec);
    lib.push_back({r.value, 0.125, r.error_estimate});
  }
  {
    auto r = integrate_nd(
        [](const Vec& x) {
          return std::exp(-(x[0] * x[0] + x[1] * x[1]) / 2.0) / (2.0 * M_PI);
        },
        {{-10, 10}, {-10, 10}}, spec);
    lib.push_back({r.value, 1.0, r.error_estimate});
  }
  {
    // analytic: integral of e^-x cos(3x) over (0,10)
    auto r = integrate_1d(
        [](double x) { return std::exp(-x) * std::cos(3.0 * x); }, 0, 10,
        spec);
    double truth = (1.0 - std::exp(-10.0) * (std::cos(30.0) -
                                             3.0 * std::sin(30.0))) /
                   10.0;
    lib.push_back({r.value, truth, r.error_estimate});
  }

  CHECK(lib.size() >= 20);
  for (std::size_t k = 0; k < lib.size(); ++k) {
    INFO("library entry ", k);
    CHECK(std::fabs(lib[k].value - lib[k].truth) <=
          3.0 * lib[k].err + 1e-14 * std::fabs(lib[k].truth) + 1e-15);
  }
}

TEST_CASE("deterministic reruns are bit identical") {
  QuadSpec spec;
  spec.rel_tol = 1e-9;
  auto f = [](double x) { return std::exp(-x) / (1e-3 + x); };
  auto a = integrate_1d(f, 0.0, 5.0, spec);
  auto b = integrate_1d(f, 0.0, 5.0, spec);
  CHECK(a.value == b.value);
  CHECK(a.error_estimate == b.error_estimate);
  CHECK(a.evaluations == b.evaluations);

  CHECK(counter_uniform(7, 1) == counter_uniform(7, 1));
  CHECK(counter_uniform(7, 1) != counter_uniform(7, 2));
}
