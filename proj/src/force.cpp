#include "stokeslab/force.hpp"

#include <cmath>

namespace stokeslab {

namespace {

// exp(-1/u) continued by 0 for u <= 0, with first two derivatives.
double bump_e(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double bump_e1(double u) { return u > 0.0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }
double bump_e2(double u) {
  if (u <= 0.0) return 0.0;
  return std::exp(-1.0 / u) * (1.0 - 2.0 * u) / (u * u * u * u);
}

// Smooth step equal to 1 at u = 1 and 0 at u = 0 (argument runs backwards
// through the cutoff window).
double smoothstep(double u) {
  double a = bump_e(u);
  double b = bump_e(1.0 - u);
  return a / (a + b);
}

double smoothstep_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  double a = bump_e(u), b = bump_e(1.0 - u);
  double da = bump_e1(u), db = -bump_e1(1.0 - u);
  double s = a + b;
  return (da * s - a * (da + db)) / (s * s);
}

double radial_mass_unnormalized(int n, double r0) {
  // integral over R^(n-1) of exp(-1/(r0^2 - |y|^2)); midpoint in radius is
  // ample (the integrand vanishes to all orders at both ends).
  const int m = 4000;
  double h = r0 / m;
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = (i + 0.5) * h;
    double f = bump_e(r0 * r0 - r * r);
    if (n == 3)
      acc += 2.0 * M_PI * r * f;
    else if (n == 4)
      acc += 4.0 * M_PI * r * r * f;
    else
      throw std::invalid_argument("make_profiles: n must be 3 or 4");
  }
  return acc * h;
}

}  // namespace

ForceProfiles make_profiles(int n, double bump_radius, double cutoff_end) {
  ForceProfiles p;
  p.bump_radius = bump_radius;
  p.cutoff_end = cutoff_end;
  p.center.assign(n - 1, 0.0);
  p.validate();
  p.normalization = 1.0 / radial_mass_unnormalized(n, bump_radius);
  return p;
}

double g_tangential(const Vec& yp, const ForceProfiles& profiles) {
  double r2 = 0.0;
  for (std::size_t k = 0; k < yp.size(); ++k) {
    double d = yp[k] - (k < profiles.center.size() ? profiles.center[k] : 0.0);
    r2 += d * d;
  }
  double u = profiles.bump_radius * profiles.bump_radius - r2;
  return profiles.normalization * bump_e(u);
}

double g_tangential_deriv(const Vec& yp, int i, const ForceProfiles& profiles) {
  double r2 = 0.0;
  std::size_t ii = static_cast<std::size_t>(i - 1);
  double di = 0.0;
  for (std::size_t k = 0; k < yp.size(); ++k) {
    double d = yp[k] - (k < profiles.center.size() ? profiles.center[k] : 0.0);
    r2 += d * d;
    if (k == ii) di = d;
  }
  double u = profiles.bump_radius * profiles.bump_radius - r2;
  return profiles.normalization * bump_e1(u) * (-2.0 * di);
}

double g_tangential_deriv2(const Vec& yp, int i, int j,
                           const ForceProfiles& profiles) {
  double r2 = 0.0;
  std::size_t ii = static_cast<std::size_t>(i - 1);
  std::size_t jj = static_cast<std::size_t>(j - 1);
  double di = 0.0, dj = 0.0;
  for (std::size_t k = 0; k < yp.size(); ++k) {
    double d = yp[k] - (k < profiles.center.size() ? profiles.center[k] : 0.0);
    r2 += d * d;
    if (k == ii) di = d;
    if (k == jj) dj = d;
  }
  double u = profiles.bump_radius * profiles.bump_radius - r2;
  double v = profiles.normalization *
             (bump_e2(u) * 4.0 * di * dj - (i == j ? 2.0 * bump_e1(u) : 0.0));
  return v;
}

double g_normal(double yn, const ModelParams& params,
                const ForceProfiles& profiles) {
  if (yn < 0.0) throw std::domain_error("g_normal: yn must be >= 0");
  if (yn == 0.0) return 0.0;
  if (yn >= profiles.cutoff_end) return 0.0;
  double base = std::pow(yn, 1.0 - params.beta);
  if (yn <= profiles.cutoff_start) return base;
  double u = (profiles.cutoff_end - yn) /
             (profiles.cutoff_end - profiles.cutoff_start);
  return base * smoothstep(u);
}

double g_normal_deriv(double yn, const ModelParams& params,
                      const ForceProfiles& profiles) {
  if (yn < 0.0) throw std::domain_error("g_normal_deriv: yn must be >= 0");
  if (yn == 0.0 || yn >= profiles.cutoff_end)
    return 0.0;  // limit at the wall is +inf; callers integrate from 0+
  double base = std::pow(yn, 1.0 - params.beta);
  double dbase = (1.0 - params.beta) * std::pow(yn, -params.beta);
  if (yn <= profiles.cutoff_start) return dbase;
  double w = profiles.cutoff_end - profiles.cutoff_start;
  double u = (profiles.cutoff_end - yn) / w;
  return dbase * smoothstep(u) + base * smoothstep_deriv(u) * (-1.0 / w);
}

double h_time(double t, const ModelParams& params) {
  if (t <= 0.5) return 0.0;
  return std::pow(t - 0.5, -params.alpha);
}

Vec force_at(const HalfSpacePoint& y, double t, const ModelParams& params,
             const ForceProfiles& profiles) {
  Vec f(params.n, 0.0);
  double h = h_time(t, params);
  if (h == 0.0) return f;
  double gt = g_tangential(y.tangential, profiles);
  double d2gt = g_tangential_deriv(y.tangential, 2, profiles);
  double gn = g_normal(y.normal, params, profiles);
  double dgn = y.normal > 0.0 ? g_normal_deriv(y.normal, params, profiles) : 0.0;
  f[1] = params.a * gt * dgn * h;
  f[params.n - 1] += -params.a * d2gt * gn * h;
  return f;
}

}  // namespace stokeslab
