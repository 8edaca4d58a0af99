#include "stokeslab/fields.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "stokeslab/kernels.hpp"
#include "stokeslab/quad.hpp"

namespace stokeslab {

namespace {

// Generalized endpoint-power substitution; valid for exponent > -1 (negative
// powers are desingularized, positive ones have their derivative kink
// absorbed the same way).
QuadResult integrate_power(const Fn1& f, double a, double b, double p,
                           Endpoint at, const QuadSpec& spec) {
  if (!(b > a)) return {0.0, 0.0, 0};
  const double q = 1.0 / (1.0 + p);
  const double umax = std::pow(b - a, 1.0 + p);
  Fn1 g;
  if (at == Endpoint::lower) {
    g = [&f, a, q](double u) {
      double s = std::pow(u, q);
      return f(a + s) * q * std::pow(u, q - 1.0);
    };
  } else {
    g = [&f, b, q](double u) {
      double s = std::pow(u, q);
      return f(b - s) * q * std::pow(u, q - 1.0);
    };
  }
  return integrate_1d(g, 0.0, umax, spec);
}

}  // namespace

// ---------------------------------------------------------------------------
// Smoothed Gaussian field.

double smoothed_gauss_field(const Vec& v, double tau,
                            const std::vector<int>& deriv,
                            const ModelParams& params,
                            const ForceProfiles& profiles) {
  const int d = params.n - 1;
  const double r0 = profiles.bump_radius;
  const double gw = std::sqrt(2.0 * tau);
  double dist2 = 0.0;
  for (int k = 0; k < d; ++k) {
    double u = v[k] - profiles.center[k];
    dist2 += u * u;
  }
  double reach = r0 + 8.0 * gw;
  if (dist2 > reach * reach) return 0.0;

  using G16 = boost::math::quadrature::gauss<double, 16>;
  const auto& gx = G16::abscissa();
  const auto& gwt = G16::weights();

  Vec y(d);
  double acc = 0.0;
  if (tau >= 0.01) {
    // Bump-centered rule, derivatives on the Gaussian.
    std::vector<double> rn, rw;
    for (std::size_t q = 0; q < gx.size(); ++q) {
      rn.push_back(0.5 * r0 * (1.0 + gx[q]));
      rw.push_back(0.5 * r0 * gwt[q]);
      if (gx[q] != 0.0) {
        rn.push_back(0.5 * r0 * (1.0 - gx[q]));
        rw.push_back(0.5 * r0 * gwt[q]);
      }
    }
    int na = std::min(96, std::max(32, static_cast<int>(8.0 * r0 / gw) * 4));
    if (d == 2) {
      double off[2];
      for (std::size_t q = 0; q < rn.size(); ++q) {
        double ring = 0.0;
        for (int a = 0; a < na; ++a) {
          double th = (2.0 * M_PI * (a + 0.5)) / na;
          y[0] = profiles.center[0] + rn[q] * std::cos(th);
          y[1] = profiles.center[1] + rn[q] * std::sin(th);
          off[0] = v[0] - y[0];
          off[1] = v[1] - y[1];
          ring += g_tangential(y, profiles) * gauss_deriv(off, 2, tau, deriv);
        }
        acc += rw[q] * rn[q] * ring * (2.0 * M_PI / na);
      }
      return acc;
    }
    const int mth = 16, mph = 32;
    double off[3];
    for (std::size_t q = 0; q < rn.size(); ++q) {
      double shell = 0.0;
      for (int a = 0; a < mth; ++a) {
        double cth = -1.0 + (2.0 * (a + 0.5)) / mth;
        double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
        for (int b = 0; b < mph; ++b) {
          double ph = (2.0 * M_PI * (b + 0.5)) / mph;
          y[0] = profiles.center[0] + rn[q] * sth * std::cos(ph);
          y[1] = profiles.center[1] + rn[q] * sth * std::sin(ph);
          y[2] = profiles.center[2] + rn[q] * cth;
          for (int k = 0; k < 3; ++k) off[k] = v[k] - y[k];
          shell += g_tangential(y, profiles) * gauss_deriv(off, 3, tau, deriv);
        }
      }
      acc += rw[q] * rn[q] * rn[q] * shell * (2.0 / mth) * (2.0 * M_PI / mph);
    }
    return acc;
  }

  // Narrow Gaussian: move the derivatives onto the bump and integrate around
  // the Gaussian center. |deriv| <= 2 is all the field evaluators need.
  int i1 = 0, i2 = 0, total = 0;
  for (std::size_t k = 0; k < deriv.size(); ++k) {
    total += deriv[k];
    for (int rep = 0; rep < deriv[k]; ++rep) {
      if (i1 == 0)
        i1 = static_cast<int>(k) + 1;
      else
        i2 = static_cast<int>(k) + 1;
    }
  }
  if (total > 2)
    throw std::invalid_argument(
        "smoothed_gauss_field: derivative order must be <= 2 for small tau");
  auto bump_der = [&](const Vec& yy) {
    if (total == 0) return g_tangential(yy, profiles);
    if (total == 1) return g_tangential_deriv(yy, i1, profiles);
    return g_tangential_deriv2(yy, i1, i2, profiles);
  };

  const double Rg = 8.0 * gw;
  std::vector<double> rn, rw;
  for (int panel = 0; panel < 2; ++panel) {
    double lo = panel == 0 ? 0.0 : 0.25 * Rg;
    double hi = panel == 0 ? 0.25 * Rg : Rg;
    for (std::size_t q = 0; q < gx.size(); ++q) {
      rn.push_back(0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[q]);
      rw.push_back(0.5 * (hi - lo) * gwt[q]);
      if (gx[q] != 0.0) {
        rn.push_back(0.5 * (lo + hi) - 0.5 * (hi - lo) * gx[q]);
        rw.push_back(0.5 * (hi - lo) * gwt[q]);
      }
    }
  }
  if (d == 2) {
    const int na = 32;
    double w[2];
    for (std::size_t q = 0; q < rn.size(); ++q) {
      double ring = 0.0;
      for (int a = 0; a < na; ++a) {
        double th = (2.0 * M_PI * (a + 0.5)) / na;
        w[0] = rn[q] * std::cos(th);
        w[1] = rn[q] * std::sin(th);
        y[0] = v[0] - w[0];
        y[1] = v[1] - w[1];
        ring += bump_der(y) * heat_kernel_radial2(rn[q] * rn[q], tau, 2);
      }
      acc += rw[q] * rn[q] * ring * (2.0 * M_PI / na);
    }
    return acc;
  }
  const int mth = 12, mph = 24;
  for (std::size_t q = 0; q < rn.size(); ++q) {
    double shell = 0.0;
    for (int a = 0; a < mth; ++a) {
      double cth = -1.0 + (2.0 * (a + 0.5)) / mth;
      double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
      for (int b = 0; b < mph; ++b) {
        double ph = (2.0 * M_PI * (b + 0.5)) / mph;
        y[0] = v[0] - rn[q] * sth * std::cos(ph);
        y[1] = v[1] - rn[q] * sth * std::sin(ph);
        y[2] = v[2] - rn[q] * cth;
        shell += bump_der(y) * heat_kernel_radial2(rn[q] * rn[q], tau, 3);
      }
    }
    acc +=
        rw[q] * rn[q] * rn[q] * shell * (2.0 / mth) * (2.0 * M_PI / mph);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Tangential profile.

TangentialProfile::TangentialProfile(const Vec& center, double tau,
                                     std::vector<int> deriv,
                                     const ModelParams& params,
                                     const ForceProfiles& profiles)
    : dim_(params.n - 1), newton_c_(newton_constant(params.n)) {
  const double r0 = profiles.bump_radius;
  const double gw = std::sqrt(2.0 * tau);
  double coff = 0.0;  // |center - bump center|
  {
    double s = 0.0;
    for (int k = 0; k < dim_; ++k) {
      double u = center[k] - profiles.center[k];
      s += u * u;
    }
    coff = std::sqrt(s);
  }
  const double reach = r0 + 8.0 * gw + 0.05;
  const double R = coff + reach;

  // Radial panels: geometric grading toward 0 (kernel heights go to 0), then
  // coarse panels out to the support annulus, resolved panels across it.
  std::vector<double> edges{0.0};
  for (double e = 2e-5; e < 0.3; e *= 4.0) edges.push_back(e);
  double lo_ann = std::max(0.3, coff - reach);
  double e = edges.back();
  while (e * 2.0 < lo_ann) {
    e *= 2.0;
    edges.push_back(e);
  }
  if (lo_ann > edges.back()) edges.push_back(lo_ann);
  const int ann_panels = 8;
  for (int k = 1; k <= ann_panels; ++k) {
    double g = lo_ann + (R - lo_ann) * k / ann_panels;
    if (g > edges.back() + 1e-12) edges.push_back(g);
  }

  using G8 = boost::math::quadrature::gauss<double, 8>;
  const auto& gx = G8::abscissa();
  const auto& gwt = G8::weights();
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], b = edges[p + 1];
    for (std::size_t q = 0; q < gx.size(); ++q) {
      for (int sgn = -1; sgn <= 1; sgn += 2) {
        if (gx[q] == 0.0 && sgn == 1) continue;
        double r = 0.5 * (a + b) + sgn * 0.5 * (b - a) * gx[q];
        radii_.push_back(r);
        weights_.push_back(0.5 * (b - a) * gwt[q]);
      }
    }
  }
  min_radius_ = 4e-5;

  // Ring (shell) averages of the field; rings that miss the field support
  // entirely are skipped.
  ring_avg_.assign(radii_.size(), 0.0);
  Vec v(dim_);
  for (std::size_t q = 0; q < radii_.size(); ++q) {
    double r = radii_[q];
    if (std::fabs(r - coff) > reach) continue;
    if (dim_ == 2) {
      int m = std::min(512, std::max(48, static_cast<int>(
                                              16.0 * 2.0 * M_PI * r / reach)));
      double acc = 0.0;
      for (int a = 0; a < m; ++a) {
        double th = (2.0 * M_PI * (a + 0.5)) / m;
        v[0] = center[0] - r * std::cos(th);
        v[1] = center[1] - r * std::sin(th);
        acc += smoothed_gauss_field(v, tau, deriv, params, profiles);
      }
      ring_avg_[q] = acc * (2.0 * M_PI / m);
    } else {
      const int mth = 24, mph = 48;
      double acc = 0.0;
      for (int a = 0; a < mth; ++a) {
        double cth = -1.0 + (2.0 * (a + 0.5)) / mth;
        double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
        for (int b = 0; b < mph; ++b) {
          double ph = (2.0 * M_PI * (b + 0.5)) / mph;
          v[0] = center[0] - r * sth * std::cos(ph);
          v[1] = center[1] - r * sth * std::sin(ph);
          v[2] = center[2] - r * cth;
          acc += smoothed_gauss_field(v, tau, deriv, params, profiles);
        }
      }
      ring_avg_[q] = acc * (2.0 / mth) * (2.0 * M_PI / mph);
    }
  }
  center_value_ = smoothed_gauss_field(center, tau, deriv, params, profiles);
}

double TangentialProfile::against_newton(double h) const {
  const double n = dim_ + 1;
  double acc = 0.0;
  for (std::size_t q = 0; q < radii_.size(); ++q) {
    if (ring_avg_[q] == 0.0) continue;
    double r = radii_[q];
    double k = -newton_c_ * std::pow(r * r + h * h, 0.5 * (2.0 - n));
    acc += weights_[q] * std::pow(r, dim_ - 1) * k * ring_avg_[q];
  }
  return acc;
}

double TangentialProfile::against_newton_dn(double h) const {
  const double n = dim_ + 1;
  if (h < min_radius_) return 0.5 * center_value_;  // Poisson half-mass limit
  double acc = 0.0;
  for (std::size_t q = 0; q < radii_.size(); ++q) {
    if (ring_avg_[q] == 0.0) continue;
    double r = radii_[q];
    double k = newton_c_ * (n - 2.0) * h * std::pow(r * r + h * h, -0.5 * n);
    acc += weights_[q] * std::pow(r, dim_ - 1) * k * ring_avg_[q];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Wall layer integrals and the singular time layer.

namespace {

// integral over (0, cutoff_end) of the wall profile (or its derivative)
// against the l-th derivative of the 1-d heat kernel at argument c + sgn*y.
double wall_layer(int l, double c, double sgn, double tau, bool use_deriv,
                  const ModelParams& params, const ForceProfiles& profiles,
                  const QuadSpec& spec) {
  const double ce = profiles.cutoff_end;
  const double p = use_deriv ? -params.beta : 0.0;  // endpoint power at 0
  auto f = [&](double y) {
    double g = use_deriv ? g_normal_deriv(y, params, profiles)
                         : g_normal(y, params, profiles);
    return g * heat_kernel_normal_deriv(c + sgn * y, tau, l);
  };
  QuadSpec ws = spec;
  ws.max_subdivisions = 400;
  return integrate_power(f, 0.0, ce, p, Endpoint::lower, ws).value;
}

// integral over (1/2, t) of (s-1/2)^(-alpha) Q(t-s) ds, with Q behaving like
// sigma^right_p near sigma = 0. Split at the midpoint: each half carries a
// single endpoint feature handled by the power substitution.
QuadResult time_layer(double t, const ModelParams& params,
                      const std::function<double(double)>& Q, double right_p,
                      const QuadSpec& spec) {
  if (t <= 0.5) return {0.0, 0.0, 0};
  const double m = 0.5 * (t + 0.5);
  QuadSpec ts = spec;
  ts.max_subdivisions = 600;
  auto left_f = [&](double s) { return std::pow(s - 0.5, -params.alpha) * Q(t - s); };
  QuadResult left =
      integrate_power(left_f, 0.5, m, -params.alpha, Endpoint::lower, ts);
  auto right_f = [&](double sig) {
    return std::pow(t - sig - 0.5, -params.alpha) * Q(sig);
  };
  QuadResult right =
      integrate_power(right_f, 0.0, t - m, right_p, Endpoint::lower, ts);
  return {left.value + right.value, left.error_estimate + right.error_estimate,
          left.evaluations + right.evaluations};
}

FieldSample make_sample(const SpaceTimePoint& x, std::string comp,
                        QuadResult r, double scale) {
  FieldSample s;
  s.location = x;
  s.component = std::move(comp);
  s.value = scale * r.value;
  s.error_estimate = std::fabs(scale) * r.error_estimate;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field evaluators.

FieldSample velocity_reflection(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  FieldSample zero = make_sample(x, std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5 || (i != 2 && i != n)) return zero;

  const double xn = x.point.normal;
  auto Q = [&](double tau) {
    if (i == 2) {
      double tang =
          smoothed_gauss_field(x.point.tangential, tau, {}, params, profiles);
      if (tang == 0.0) return 0.0;
      double wall = wall_layer(0, xn, -1.0, tau, true, params, profiles, spec) -
                    wall_layer(0, xn, +1.0, tau, true, params, profiles, spec);
      return tang * wall;
    }
    double tang = smoothed_gauss_field(x.point.tangential, tau, {0, 1}, params,
                                       profiles);
    if (tang == 0.0) return 0.0;
    double wall = wall_layer(0, xn, -1.0, tau, false, params, profiles, spec) -
                  wall_layer(0, xn, +1.0, tau, false, params, profiles, spec);
    return -tang * wall;
  };
  QuadResult r = time_layer(x.t, params, Q, 0.0, spec);
  return make_sample(x, std::to_string(i), r, params.a);
}

FieldSample velocity_reflection_dn(const SpaceTimePoint& x, int i,
                                   const ModelParams& params,
                                   const ForceProfiles& profiles,
                                   const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  FieldSample zero = make_sample(x, "dnV" + std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5 || (i != 2 && i != n)) return zero;

  const double xn = x.point.normal;
  auto Q = [&](double tau) {
    if (i == 2) {
      double tang =
          smoothed_gauss_field(x.point.tangential, tau, {}, params, profiles);
      if (tang == 0.0) return 0.0;
      double wall = wall_layer(1, xn, -1.0, tau, true, params, profiles, spec) -
                    wall_layer(1, xn, +1.0, tau, true, params, profiles, spec);
      return tang * wall;
    }
    double tang = smoothed_gauss_field(x.point.tangential, tau, {0, 1}, params,
                                       profiles);
    if (tang == 0.0) return 0.0;
    double wall = wall_layer(1, xn, -1.0, tau, false, params, profiles, spec) -
                  wall_layer(1, xn, +1.0, tau, false, params, profiles, spec);
    return -tang * wall;
  };
  QuadResult r = time_layer(x.t, params, Q, 0.0, spec);
  return make_sample(x, "dnV" + std::to_string(i), r, params.a);
}

FieldSample velocity_correction(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  FieldSample zero = make_sample(x, "W" + std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5 || x.point.normal == 0.0) return zero;
  if (i < 1 || i > n)
    throw std::invalid_argument("velocity_correction: bad index");

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] += 1;  // structural D_2
  if (i <= n - 1) delta[i - 1] += 1;

  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    auto zf = [&](double zn) {
      double g1 = wall_layer(0, xn - zn, +1.0, tau, true, params, profiles, spec);
      double phi = (i <= n - 1) ? prof.against_newton(zn)
                                : prof.against_newton_dn(zn);
      return g1 * phi;
    };
    double sq = std::sqrt(tau);
    std::vector<double> ed{0.0};
    for (double c : {8.0, 4.0, 2.0, 1.0}) {
      double g = xn - c * sq;
      if (g > ed.back() + 1e-14 && g < xn) ed.push_back(g);
    }
    ed.push_back(xn);
    QuadSpec zs = spec;
    zs.max_subdivisions = 200;
    return integrate_1d_panels(zf, ed, zs).value;
  };
  QuadResult r =
      time_layer(x.t, params, Q, 0.5 * (1.0 - params.beta), spec);
  return make_sample(x, "W" + std::to_string(i), r, -4.0 * params.a);
}

FieldSample boundary_blowup_term(const SpaceTimePoint& x, int i,
                                 const ModelParams& params,
                                 const ForceProfiles& profiles,
                                 const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("boundary_blowup_term: i must be tangential");
  if (norm(x.point.tangential) < 2.0)
    throw std::domain_error("boundary_blowup_term: require |x'| >= 2");
  FieldSample zero = make_sample(x, "Bw" + std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5) return zero;

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] += 1;
  delta[i - 1] += 1;
  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    double wall = wall_layer(0, xn, +1.0, tau, true, params, profiles, spec);
    return wall * prof.against_newton(0.0);
  };
  QuadResult r = time_layer(x.t, params, Q, -0.5 * params.beta, spec);
  return make_sample(x, "Bw" + std::to_string(i), r, -4.0 * params.a);
}

FieldSample boundary_blowup_term_dn(const SpaceTimePoint& x, int i,
                                    const ModelParams& params,
                                    const ForceProfiles& profiles,
                                    const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("boundary_blowup_term_dn: i must be tangential");
  FieldSample zero = make_sample(x, "dnBw" + std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5) return zero;

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] += 1;
  delta[i - 1] += 1;
  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    double wall = wall_layer(1, xn, +1.0, tau, true, params, profiles, spec);
    return wall * prof.against_newton(0.0);
  };
  QuadResult r =
      time_layer(x.t, params, Q, -0.5 * (1.0 + params.beta), spec);
  return make_sample(x, "dnBw" + std::to_string(i), r, -4.0 * params.a);
}

FieldSample normal_deriv_regular_piece(const SpaceTimePoint& x, int i,
                                       const ModelParams& params,
                                       const ForceProfiles& profiles,
                                       const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  if (i < 1 || i > n - 1)
    throw std::invalid_argument(
        "normal_deriv_regular_piece: i must be tangential");
  FieldSample zero = make_sample(x, "d2WG" + std::to_string(i), {0, 0, 0}, 1.0);
  if (x.t <= 0.5 || x.point.normal == 0.0) return zero;

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] += 1;
  delta[i - 1] += 1;
  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    auto zf = [&](double zn) {
      double g1 = wall_layer(0, xn - zn, +1.0, tau, true, params, profiles, spec);
      return g1 * prof.against_newton_dn(zn);
    };
    double sq = std::sqrt(tau);
    std::vector<double> ed{0.0};
    for (double c : {8.0, 4.0, 2.0, 1.0}) {
      double g = xn - c * sq;
      if (g > ed.back() + 1e-14 && g < xn) ed.push_back(g);
    }
    ed.push_back(xn);
    QuadSpec zs = spec;
    zs.max_subdivisions = 200;
    return integrate_1d_panels(zf, ed, zs).value;
  };
  QuadResult r =
      time_layer(x.t, params, Q, 0.5 * (1.0 - params.beta), spec);
  return make_sample(x, "d2WG" + std::to_string(i), r, -4.0 * params.a);
}

NormalDerivParts normal_deriv_w(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec) {
  NormalDerivParts parts;
  FieldSample dnv = velocity_reflection_dn(x, i, params, profiles, spec);
  FieldSample reg = normal_deriv_regular_piece(x, i, params, profiles, spec);
  FieldSample blow = boundary_blowup_term(x, i, params, profiles, spec);
  parts.reflection_dn = dnv.value;
  parts.regular_piece = reg.value;
  parts.blowup_term = blow.value;
  parts.total = make_sample(x, "dnw" + std::to_string(i), {0, 0, 0}, 1.0);
  parts.total.value = dnv.value + reg.value + blow.value;
  parts.total.error_estimate =
      dnv.error_estimate + reg.error_estimate + blow.error_estimate;
  return parts;
}

FieldSample pressure_singular_part(const SpaceTimePoint& x,
                                   const ModelParams& params,
                                   const ForceProfiles& profiles,
                                   const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  if (std::fabs(x.point.tangential[1]) < 2.0)
    throw std::domain_error("pressure_singular_part: require |x_2| >= 2");
  FieldSample zero = make_sample(x, "pi_b", {0, 0, 0}, 1.0);
  if (x.t <= 0.5) return zero;

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] = 1;
  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    double wall = wall_layer(1, 0.0, +1.0, tau, true, params, profiles, spec);
    return wall * prof.against_newton(xn);
  };
  QuadResult r =
      time_layer(x.t, params, Q, -0.5 * (1.0 + params.beta), spec);
  return make_sample(x, "pi_b", r, params.a);
}

FieldSample pressure_regular_part(const SpaceTimePoint& x,
                                  const ModelParams& params,
                                  const ForceProfiles& profiles,
                                  const QuadSpec& spec) {
  params.validate();
  const int n = params.n;
  x.point.validate(n);
  if (norm(x.point.tangential) < 2.0)
    throw std::domain_error("pressure_regular_part: require |x'| >= 2");
  FieldSample zero = make_sample(x, "pi_g", {0, 0, 0}, 1.0);
  if (x.t <= 0.5) return zero;

  const double xn = x.point.normal;
  std::vector<int> delta(n - 1, 0);
  delta[1] = 1;
  auto Q = [&](double tau) {
    TangentialProfile prof(x.point.tangential, tau, delta, params, profiles);
    double wall = wall_layer(0, 0.0, +1.0, tau, true, params, profiles, spec);
    return wall * prof.against_newton_dn(xn);
  };
  QuadResult r = time_layer(x.t, params, Q, -0.5 * params.beta, spec);
  return make_sample(x, "pi_g", r, params.a);
}

}  // namespace stokeslab
