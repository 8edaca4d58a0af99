#include "stokeslab/shearflow.hpp"

#include <cmath>

#include "stokeslab/analysis.hpp"
#include "stokeslab/quad.hpp"

namespace stokeslab {

namespace {

double g_drive(double s, double alpha) {
  return std::pow(std::fabs(s), alpha - 1.0);
}

}  // namespace

double shear_velocity(double x3, double t, const ShearParams& sp,
                      const QuadSpec& spec, ShearForm form) {
  sp.validate();
  if (!(t > -4.0 && t < 0.0))
    throw std::domain_error("shear_velocity: t must lie in (-4, 0)");
  if (x3 < 0.0) throw std::domain_error("shear_velocity: x3 must be >= 0");
  if (x3 == 0.0) return 0.0;

  QuadSpec qs = spec;
  qs.max_subdivisions = 800;
  if (form == ShearForm::printed) {
    auto f = [&](double tau) {
      return g_drive(t - tau - 4.0, sp.alpha) *
             std::erf(x3 / std::sqrt(4.0 * (tau + 4.0)));
    };
    // g's argument reaches 0 only at tau = t - 4 < -4, outside the range;
    // the erf factor has a sqrt kink at tau = -4.
    std::vector<double> edges{-4.0};
    for (double c : {1e-6, 1e-4, 1e-2, 0.1, 0.5}) {
      double e = -4.0 + c * (t + 4.0);
      if (e > edges.back() + 1e-15 && e < t) edges.push_back(e);
    }
    edges.push_back(t);
    return integrate_1d_panels(f, edges, qs).value;
  }
  // Duhamel form, integrated in sigma = t - s to put the feature at 0.
  auto f = [&](double sigma) {
    return g_drive(t - sigma, sp.alpha) *
           std::erf(x3 / (2.0 * std::sqrt(sigma)));
  };
  std::vector<double> edges{0.0};
  double tw = -t;  // distance from the driving singularity at s = 0
  for (double c : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
    double e = c * tw;
    if (e > edges.back() + 1e-15 && e < t + 4.0) edges.push_back(e);
  }
  for (double c : {0.25, 1.0, 4.0}) {
    double e = c * x3 * x3;
    if (e > 1e-15 && e < t + 4.0) edges.push_back(e);
  }
  edges.push_back(t + 4.0);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return integrate_1d_panels(f, edges, qs).value;
}

double shear_velocity_dx(double x3, double t, const ShearParams& sp,
                         const QuadSpec& spec) {
  sp.validate();
  if (!(t > -4.0 && t < 0.0))
    throw std::domain_error("shear_velocity_dx: t must lie in (-4, 0)");
  QuadSpec qs = spec;
  qs.max_subdivisions = 800;
  // d/dx3 erf(x3 / (2 sqrt(sigma))) = exp(-x3^2/4 sigma) / sqrt(pi sigma)
  auto f = [&](double sigma) {
    return g_drive(t - sigma, sp.alpha) *
           std::exp(-x3 * x3 / (4.0 * sigma)) / std::sqrt(M_PI * sigma);
  };
  std::vector<double> edges{0.0};
  for (double c : {1e-2, 0.1, 1.0, 4.0, 16.0}) {
    double e = c * x3 * x3;
    if (e > edges.back() + 1e-18 && e < t + 4.0) edges.push_back(e);
  }
  for (double c : {1e-2, 0.1, 1.0}) {
    double e = c * (-t);
    if (e > edges.back() + 1e-18 && e < t + 4.0) edges.push_back(e);
  }
  edges.push_back(t + 4.0);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  // sqrt singularity of the integrand at sigma = 0 is tempered by the
  // Gaussian for x3 > 0; the substitution still speeds convergence.
  auto g = [&](double u) {
    double sigma = u * u;
    return f(sigma) * 2.0 * u;
  };
  std::vector<double> uedges;
  uedges.reserve(edges.size());
  for (double e : edges) uedges.push_back(std::sqrt(e));
  return integrate_1d_panels(g, uedges, qs).value;
}

PowerLawFit shear_normal_deriv_rate(const ShearParams& sp,
                                    const QuadSpec& spec) {
  std::vector<std::pair<double, double>> samples;
  const int npts = 9;
  for (int q = 0; q < npts; ++q) {
    double x3 = 1e-3 * std::pow(100.0, q / double(npts - 1));
    double t = -x3 * x3 / 8.0;
    samples.emplace_back(x3, shear_velocity_dx(x3, t, sp, spec));
  }
  return fit_power_law(samples);
}

}  // namespace stokeslab
