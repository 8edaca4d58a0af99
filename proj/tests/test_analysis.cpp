#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokeslab/analysis.hpp"

using namespace stokeslab;

TEST_CASE("power-law fit: exactness, robustness, rejection") {
  {
    std::vector<std::pair<double, double>> s;
    for (double x : {0.01, 0.05, 0.3, 1.0, 4.0})
      s.emplace_back(x, 3.0 * std::pow(x, -0.1));
    PowerLawFit f = fit_power_law(s);
    CHECK(f.exponent == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(f.log_coefficient) == doctest::Approx(3.0).epsilon(1e-10));
  }
  {
    std::vector<std::pair<double, double>> s;
    for (int k = 0; k < 12; ++k) {
      double x = 0.01 * std::pow(10.0, k / 4.0);
      s.emplace_back(x, x * x * (1.0 + 0.001 * std::sin(std::log(x))));
    }
    PowerLawFit f = fit_power_law(s);
    CHECK(std::fabs(f.exponent - 2.0) < 0.001);
  }
  {
    std::vector<std::pair<double, double>> s = {
        {0.1, 1.0}, {0.5, -1.0}, {2.0, 1.0}, {8.0, -1.0}};
    CHECK_THROWS_AS(fit_power_law(s), FitError);
  }
  {
    std::vector<std::pair<double, double>> s = {{0.1, 1.0}, {0.2, 1.1},
                                                {0.3, 1.2}};
    CHECK_THROWS_AS(fit_power_law(s), FitError);  // too few points
  }
  {
    std::vector<std::pair<double, double>> s = {
        {1.0, 1.0}, {1.2, 1.1}, {1.4, 1.2}, {1.6, 1.3}};
    CHECK_THROWS_AS(fit_power_law(s), FitError);  // sub-decade span
  }
  {
    // noisy data fails the r^2 gate but passes ungated
    std::vector<std::pair<double, double>> s = {
        {0.01, 1.0}, {0.1, 5.0}, {1.0, 0.3}, {10.0, 2.0}};
    CHECK_THROWS_AS(fit_power_law(s), FitError);
    CHECK_NOTHROW(fit_power_law_ungated(s));
  }
}

namespace {

// Independent graded-mesh midpoint oracle for the layered integral: cosine
// grading toward both time endpoints, cubic grading toward the wall.
double layer_oracle(double xn, double t, double gamma, double alpha,
                    double beta, int mt, int my) {
  const double T = t - 0.5;
  std::vector<double> ym(my), yw(my);
  for (int j = 0; j < my; ++j) {
    double ua = double(j) / my, ub = double(j + 1) / my;
    double ya = 2.0 * ua * ua * ua, yb = 2.0 * ub * ub * ub;
    ym[j] = 0.5 * (ya + yb);
    yw[j] = yb - ya;
  }
  double acc = 0.0;
  for (int k = 0; k < mt; ++k) {
    double ua = double(k) / mt, ub = double(k + 1) / mt;
    double ta = 0.5 + T * 0.5 * (1.0 - std::cos(M_PI * ua));
    double tb = 0.5 + T * 0.5 * (1.0 - std::cos(M_PI * ub));
    double tm = 0.5 * (ta + tb);
    double dt = tb - ta;
    double sigma = t - tm;
    if (!(sigma > 0.0) || !(tm > 0.5)) continue;
    double inner = 0.0;
    for (int j = 0; j < my; ++j) {
      double u = xn + ym[j];
      inner += std::pow(ym[j], -beta) * std::exp(-u * u / (4.0 * sigma)) *
               yw[j];
    }
    acc += std::pow(tm - 0.5, -alpha) * std::pow(sigma, gamma) * inner * dt;
  }
  return acc;
}

}  // namespace

TEST_CASE("layered integral matches a graded-mesh oracle") {
  ModelParams p;
  p.alpha = 0.5;
  p.beta = 0.5;
  QuadSpec spec;
  spec.rel_tol = 1e-9;
  double v = boundary_layer_integral({0.0, 0.51, 0.0}, p, spec);
  double oracle = layer_oracle(0.0, 0.51, 0.0, 0.5, 0.5, 2500, 400);
  CHECK(std::fabs(v - oracle) / std::fabs(v) < 1e-5);
}

TEST_CASE("layered integral is decreasing in the wall distance") {
  ModelParams p;
  p.alpha = 0.9;
  p.beta = 0.4;
  QuadSpec spec;
  double prev = std::numeric_limits<double>::infinity();
  for (double xn : {0.0, 0.05, 0.1, 0.2}) {
    double v = boundary_layer_integral({xn, 0.51, -0.5}, p, spec);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("layered integral time exponent, first branch") {
  ModelParams p;
  p.alpha = 0.9;
  p.beta = 0.4;
  QuadSpec spec;
  std::vector<std::pair<double, double>> s;
  for (int k = 0; k < 7; ++k) {
    double tm = 1e-4 * std::pow(100.0, k / 6.0);
    s.emplace_back(tm, boundary_layer_integral({0.0, 0.5 + tm, -0.5}, p, spec));
  }
  PowerLawFit f = fit_power_law(s);
  CHECK(std::fabs(f.exponent - (-0.1)) < 0.03);
}

TEST_CASE("layered integral branch guard") {
  ModelParams p;
  p.alpha = 0.9;
  p.beta = 0.4;
  QuadSpec spec;
  CHECK_THROWS_AS(boundary_layer_integral({0.0, 0.6, -1.5}, p, spec),
                  std::domain_error);
  CHECK(boundary_layer_integral({0.05, 0.6, -1.5}, p, spec) > 0.0);
}

TEST_CASE("smoothing remainder: exponent and identity limit") {
  ModelParams p;
  QuadSpec spec;
  spec.rel_tol = 1e-9;
  HalfSpacePoint x{{5.0, 0.0}, 1.0};
  std::vector<double> ts;
  for (int k = 0; k < 6; ++k) ts.push_back(1e-4 * std::pow(10.0, k * 0.6));
  auto rep = verify_smoothing_remainder(x, ts, 0, 0, p, spec);
  CHECK(rep.fit.exponent >= 0.45);
  CHECK(rep.limit_error < 1e-6);
  auto rep1 = verify_smoothing_remainder(x, ts, 1, 0, p, spec);
  CHECK(rep1.fit.exponent >= 0.45);
  CHECK_THROWS_AS(verify_smoothing_remainder(x, ts, 2, 1, p, spec),
                  std::invalid_argument);
  HalfSpacePoint xc{{0.5, 0.0}, 1.0};
  CHECK_THROWS_AS(verify_smoothing_remainder(xc, ts, 0, 0, p, spec),
                  std::domain_error);
}

TEST_CASE("condition arithmetic: hand-checked margins and emptiness") {
  ModelParams p;
  p.alpha = 0.9;
  p.beta = 0.4;
  ConditionArgs a;
  a.q = 16.0;
  ConditionsReport rep = check_conditions(p, a, 10000);
  bool found = false;
  for (const auto& c : rep.checks) {
    if (c.name == "blowup_rate_condition") {
      found = true;
      CHECK(c.holds);
      CHECK(c.margin == doctest::Approx(0.0125).epsilon(1e-12));
    }
  }
  CHECK(found);
  CHECK(rep.cd_pressure_members == 0);
  CHECK(rep.cd_interp_members == 0);

  // margins flip sign exactly at the boundary
  double qstar = 3.0 / (2.0 * p.alpha + p.beta - 2.0);
  a.q = qstar * (1.0 + 1e-9);
  bool above = false;
  for (const auto& c : check_conditions(p, a, 4).checks)
    if (c.name == "blowup_rate_condition") above = c.holds;
  CHECK(above);
  a.q = qstar * (1.0 - 1e-9);
  bool below = true;
  for (const auto& c : check_conditions(p, a, 4).checks)
    if (c.name == "blowup_rate_condition") below = c.holds;
  CHECK(!below);

  // default perturbation chain is feasible end to end
  ConditionsReport def = check_conditions(p, ConditionArgs{}, 100);
  for (const auto& c : def.checks) {
    INFO(c.name);
    CHECK(c.holds);
  }
  CHECK(def.derived_beta < 0.5);
}
