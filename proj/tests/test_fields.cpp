#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stokeslab/fields.hpp"
#include "stokeslab/kernels.hpp"
#include "stokeslab/quad.hpp"

using namespace stokeslab;

namespace {

ModelParams params3() { return ModelParams{}; }

QuadSpec spec6() {
  QuadSpec s;
  s.rel_tol = 1e-6;
  s.abs_tol = 1e-16;
  return s;
}

}  // namespace

TEST_CASE("smoothed field against a direct cubature oracle") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec;
  spec.rel_tol = 1e-9;
  spec.max_subdivisions = 20000;
  for (double tau : {0.2, 0.004}) {
    for (Vec v : {Vec{0.3, 0.2}, Vec{0.9, -0.4}}) {
      std::vector<int> dl = {1, 1};
      double got = smoothed_gauss_field(v, tau, dl, p, prof);
      auto f = [&](const Vec& y) {
        double off[2] = {v[0] - y[0], v[1] - y[1]};
        return g_tangential(y, prof) * gauss_deriv(off, 2, tau, dl);
      };
      double want =
          integrate_nd(f, {{-0.91, 0.91}, {-0.91, 0.91}}, spec).value;
      CHECK(std::fabs(got - want) <=
            1e-6 * std::max(std::fabs(want), 1.0) + 1e-9);
    }
  }
  // far outside the reach the field is exactly zero
  CHECK(smoothed_gauss_field({9.0, 9.0}, 0.01, {0, 1}, p, prof) == 0.0);
}

TEST_CASE("tangential profile against a direct cubature oracle") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec;
  spec.rel_tol = 1e-8;
  spec.max_subdivisions = 40000;
  Vec center = {5.0, 5.0};
  double tau = 0.003;
  TangentialProfile profile(center, tau, {1, 1}, p, prof);

  for (double h : {0.0, 0.05, 0.4}) {
    double got = profile.against_newton(h);
    auto f = [&](const Vec& z) {
      double r2 = z[0] * z[0] + z[1] * z[1] + h * h;
      if (!(r2 > 0.0)) return 0.0;
      Vec v = {center[0] - z[0], center[1] - z[1]};
      return -newton_constant(3) / std::sqrt(r2) *
             smoothed_gauss_field(v, tau, {1, 1}, p, prof);
    };
    // the field lives on an annulus around |z| = |center|
    double want = integrate_nd(f, {{2.0, 8.2}, {2.0, 8.2}}, spec).value;
    CHECK(std::fabs(got - want) / std::fabs(want) < 2e-5);
  }
  // kernel-height derivative: half-mass delta limit at the wall
  double lim = profile.against_newton_dn(1e-9);
  CHECK(lim ==
        doctest::Approx(0.5 * profile.field_at_center()).epsilon(1e-12));
}

TEST_CASE("profiles recover the bump-convolved kernels as tau -> 0") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  Vec center = {5.0, 5.0};
  double tau = 1e-6;
  TangentialProfile profile(center, tau, {1, 1}, p, prof);
  double phi_like = profile.against_newton(0.0);
  double phi =
      newton_hessian_profile({center, 0.0}, 1, p, prof, spec);
  CHECK(std::fabs(phi_like - phi) / std::fabs(phi) < 1e-3);
}

TEST_CASE("causality and sparsity of the reflection part") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  SpaceTimePoint early{{{5.0, 5.0}, 0.3}, 0.4};
  CHECK(velocity_reflection(early, 2, p, prof, spec).value == 0.0);
  SpaceTimePoint x{{{5.0, 5.0}, 0.3}, 0.51};
  CHECK(velocity_reflection(x, 1, p, prof, spec).value == 0.0);
  CHECK(velocity_correction(early, 1, p, prof, spec).value == 0.0);
  CHECK(boundary_blowup_term(early, 1, p, prof, spec).value == 0.0);
  CHECK(pressure_singular_part({{{0.0, 5.0}, 0.0}, 0.4}, p, prof, spec)
            .value == 0.0);
}

TEST_CASE("reflection part decays super-polynomially away from the support") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  // at separation >= 1 from the support the Gaussian factor crushes the
  // field as t -> 1/2+
  double v1 = velocity_reflection({{{2.5, 0.0}, 0.5}, 0.5 + 3e-3}, 2, p, prof,
                                  spec)
                  .value;
  double v2 = velocity_reflection({{{2.5, 0.0}, 0.5}, 0.5 + 1e-2}, 2, p, prof,
                                  spec)
                  .value;
  CHECK(std::fabs(v1) < 1e-30);
  CHECK(std::fabs(v2) < 1e-8);
  CHECK(std::fabs(v1) < std::fabs(v2) * 1e-10);
}

TEST_CASE("blowup term: slow-route oracle at one point") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  Vec xp = {5.0, 5.0};
  double t = 0.5 + 1e-2;
  SpaceTimePoint x{{xp, 0.0}, t};
  double fast = boundary_blowup_term(x, 1, p, prof, spec).value;

  // Slow route: independent integration order, using the generic tangential
  // convolution for the inner plane integral and a bump cubature outside.
  QuadSpec slow;
  slow.rel_tol = 1e-6;
  slow.max_subdivisions = 2000;
  auto Q = [&](double tau) {
    auto wall = integrate_singular_1d(
        [&](double yn) {
          return g_normal_deriv(yn, p, prof) *
                 heat_kernel_normal_deriv(yn, tau, 0);
        },
        0.0, prof.cutoff_end, -p.beta, Endpoint::lower, slow);
    auto outer = [&](const Vec& yp) {
      if (g_tangential(yp, prof) == 0.0) return 0.0;
      Vec u = {xp[0] - yp[0], xp[1] - yp[1]};
      auto density = [&](const Vec& zp) {
        double r2 = zp[0] * zp[0] + zp[1] * zp[1];
        if (!(r2 > 0.0)) return 0.0;
        double w[3] = {zp[0], zp[1], 0.0};
        return newton_d1(w, 3, 1);
      };
      double conv = convolve_tangential(u, tau, density, slow, {0, 1}).value;
      return g_tangential(yp, prof) * conv;
    };
    double tang =
        integrate_nd(outer, {{-0.91, 0.91}, {-0.91, 0.91}}, slow).value;
    return wall.value * tang;
  };
  // time integral with the singular substitution on the left endpoint and a
  // plain adaptive on the right half
  double m = 0.5 * (t + 0.5);
  auto left = integrate_singular_1d(
      [&](double s) { return std::pow(s - 0.5, -p.alpha) * Q(t - s); }, 0.5, m,
      -p.alpha, Endpoint::lower, slow);
  auto right = integrate_1d(
      [&](double sig) { return std::pow(t - sig - 0.5, -p.alpha) * Q(sig); },
      1e-9 * (t - 0.5), t - m, slow);
  double slow_val = -4.0 * p.a * (left.value + right.value);
  CHECK(std::fabs(fast - slow_val) / std::fabs(fast) < 5e-3);
}

TEST_CASE("blowup term signs follow the opposite of the hessian profile") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  double t = 0.5 + 1e-3;
  double b_pp =
      boundary_blowup_term({{{5.0, 5.0}, 0.0}, t}, 1, p, prof, spec).value;
  double b_pm =
      boundary_blowup_term({{{5.0, -5.0}, 0.0}, t}, 1, p, prof, spec).value;
  double phi_pp = newton_hessian_profile({{5.0, 5.0}, 0.0}, 1, p, prof, spec);
  double phi_pm = newton_hessian_profile({{5.0, -5.0}, 0.0}, 1, p, prof, spec);
  CHECK(phi_pp < 0.0);
  CHECK(phi_pm > 0.0);
  CHECK(b_pp > 0.0);  // value carries the sign of -phi
  CHECK(b_pm < 0.0);
}

TEST_CASE("normal-derivative split matches a finite difference of W") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  Vec xp = {5.0, 5.0};
  double xn = 0.06, t = 0.5 + 4e-3;
  double h = 2e-3;
  double wp =
      velocity_correction({{xp, xn + h}, t}, 1, p, prof, spec).value;
  double wm =
      velocity_correction({{xp, xn - h}, t}, 1, p, prof, spec).value;
  double fd = (wp - wm) / (2.0 * h);
  double reg =
      normal_deriv_regular_piece({{xp, xn}, t}, 1, p, prof, spec).value;
  double blow = boundary_blowup_term({{xp, xn}, t}, 1, p, prof, spec).value;
  CHECK(std::fabs(fd - (reg + blow)) /
            std::max(std::fabs(fd), std::fabs(blow)) <
        5e-3);
}

TEST_CASE("no-slip and amplitude linearity") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  SpaceTimePoint xw{{{5.0, 5.0}, 0.0}, 0.6};
  for (int i = 1; i <= 3; ++i) {
    CHECK(std::fabs(velocity_reflection(xw, i, p, prof, spec).value) == 0.0);
    CHECK(std::fabs(velocity_correction(xw, i, p, prof, spec).value) == 0.0);
  }

  ModelParams p2 = p;
  p2.a = 2.0;
  SpaceTimePoint x{{{5.0, 5.0}, 0.0}, 0.5 + 1e-3};
  double b1 = boundary_blowup_term(x, 1, p, prof, spec).value;
  double b2 = boundary_blowup_term(x, 1, p2, prof, spec).value;
  CHECK(b2 == doctest::Approx(2.0 * b1).epsilon(1e-12));
}

TEST_CASE("tangential translation covariance") {
  ModelParams p = params3();
  QuadSpec spec = spec6();
  ForceProfiles prof = make_profiles(3);
  ForceProfiles shifted = prof;
  shifted.center = {1.0, -2.0};
  SpaceTimePoint x{{{5.0, 5.0}, 0.0}, 0.5 + 1e-3};
  SpaceTimePoint xs{{{6.0, 3.0}, 0.0}, 0.5 + 1e-3};
  double a = boundary_blowup_term(x, 1, p, prof, spec).value;
  double b = boundary_blowup_term(xs, 1, p, shifted, spec).value;
  CHECK(std::fabs(a - b) / std::fabs(a) < 1e-6);
}

TEST_CASE("pressure parts: signs and the half-power gap") {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec = spec6();
  double t = 0.5 + 1e-3;
  for (double x2 : {5.0, -5.0}) {
    Vec xp = {0.0, x2};
    double pb =
        pressure_singular_part({{xp, 0.0}, t}, p, prof, spec).value;
    double psi = newton_gradient_profile({xp, 0.0}, p, prof, spec);
    CHECK(pb * psi < 0.0);  // value carries the sign of -psi
  }
  // gap: the singular part grows faster by half a power as t -> 1/2+
  Vec xp = {0.0, 5.0};
  double b1 =
      pressure_singular_part({{xp, 0.0}, 0.5 + 1e-4}, p, prof, spec).value;
  double b2 =
      pressure_singular_part({{xp, 0.0}, 0.5 + 1e-2}, p, prof, spec).value;
  double g1 =
      pressure_regular_part({{xp, 0.0}, 0.5 + 1e-4}, p, prof, spec).value;
  double g2 =
      pressure_regular_part({{xp, 0.0}, 0.5 + 1e-2}, p, prof, spec).value;
  double gap = std::log(std::fabs(g1 / g2)) / std::log(1e-2) -
               std::log(std::fabs(b1 / b2)) / std::log(1e-2);
  CHECK(std::fabs(gap - 0.5) < 0.1);
}

TEST_CASE("weak divergence of the assembled velocity" * doctest::timeout(800)) {
  ModelParams p = params3();
  ForceProfiles prof = make_profiles(3);
  QuadSpec spec;
  spec.rel_tol = 1e-5;
  spec.abs_tol = 1e-14;
  // test gradient of a smooth bump at (5, 5, 0.5), radius 0.45
  Vec c = {5.0, 5.0};
  double cn = 0.5, rho = 0.45, t = 0.6;
  auto bump = [&](double r2) {
    double u = 1.0 - r2;
    return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
  };
  auto dbump = [&](double r2) {
    double u = 1.0 - r2;
    if (u <= 0.0) return 0.0;
    return std::exp(-1.0 / u) / (u * u);
  };
  // Gauss nodes on the support box
  const int m = 4;
  const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                        0.3399810435848563, 0.8611363115940526};
  const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                        0.6521451548625461, 0.3478548451374538};
  double acc = 0.0, scale = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      for (int cth = 0; cth < m; ++cth) {
        double w1 = c[0] + rho * gx[a];
        double w2 = c[1] + rho * gx[b];
        double w3 = cn + rho * gx[cth];
        double r2 = (gx[a] * gx[a] + gx[b] * gx[b] + gx[cth] * gx[cth]);
        if (r2 >= 1.0) continue;
        double weight = gw[a] * gw[b] * gw[cth] * rho * rho * rho;
        double grad[3] = {dbump(r2) * (-2.0 * gx[a]) / rho,
                          dbump(r2) * (-2.0 * gx[b]) / rho,
                          dbump(r2) * (-2.0 * gx[cth]) / rho};
        (void)bump;
        SpaceTimePoint xq{{{w1, w2}, w3}, t};
        for (int i = 1; i <= 3; ++i) {
          double wi = velocity_reflection(xq, i, p, prof, spec).value +
                      velocity_correction(xq, i, p, prof, spec).value;
          acc += weight * wi * grad[i - 1];
          scale += weight * std::fabs(wi * grad[i - 1]);
        }
      }
    }
  }
  CHECK(std::fabs(acc) < 0.02 * scale);
}
