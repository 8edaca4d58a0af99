#include "stokeslab/kernels.hpp"

#include <array>
#include <cmath>
#include <mutex>

#include <boost/math/quadrature/gauss.hpp>

namespace stokeslab {

double heat_kernel_radial2(double r2, double t, int d) {
  if (!(t > 0.0)) throw std::domain_error("heat_kernel: t must be > 0");
  return std::pow(4.0 * M_PI * t, -0.5 * d) * std::exp(-r2 / (4.0 * t));
}

double heat_kernel(const Vec& x, double t, int d) {
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("heat_kernel: dimension mismatch");
  return heat_kernel_radial2(norm2(x), t, d);
}

std::vector<long long> hermite_poly_coeffs(int l) {
  if (l < 0) throw std::invalid_argument("hermite_poly: l must be >= 0");
  // coeffs[k] multiplies eta^k; P_0 = 1, P_l = P'_(l-1) - 2 eta P_(l-1).
  std::vector<long long> c{1};
  for (int step = 1; step <= l; ++step) {
    std::vector<long long> nc(c.size() + 1, 0);
    for (std::size_t k = 1; k < c.size(); ++k)
      nc[k - 1] += static_cast<long long>(k) * c[k];
    for (std::size_t k = 0; k < c.size(); ++k) nc[k + 1] -= 2 * c[k];
    c = std::move(nc);
  }
  return c;
}

double hermite_poly(int l, double eta) {
  static std::vector<std::vector<long long>> cache;
  static std::mutex mtx;
  {
    std::lock_guard<std::mutex> lock(mtx);
    while (static_cast<int>(cache.size()) <= l)
      cache.push_back(hermite_poly_coeffs(static_cast<int>(cache.size())));
  }
  const auto& c = cache[l];
  double p = 0.0;
  for (std::size_t k = c.size(); k-- > 0;)
    p = p * eta + static_cast<double>(c[k]);
  return p;
}

double heat_kernel_normal_deriv(double xn, double t, int l) {
  if (!(t > 0.0))
    throw std::domain_error("heat_kernel_normal_deriv: t must be > 0");
  static const double inv2sqrtpi = 0.28209479177387814347;  // 1/(2 sqrt(pi))
  double eta = xn / (2.0 * std::sqrt(t));
  // chain rule: each x-derivative contributes 1/(2 sqrt(t)), so the Hermite
  // factor comes with 2^-l (checked against finite differences).
  return inv2sqrtpi * std::ldexp(1.0, -l) * std::pow(t, -0.5 * (l + 1)) *
         hermite_poly(l, eta) * std::exp(-eta * eta);
}

double gauss_deriv(const double* v, int d, double t,
                   const std::vector<int>& deriv) {
  double prod = 1.0;
  for (int k = 0; k < d; ++k) {
    int l = (k < static_cast<int>(deriv.size())) ? deriv[k] : 0;
    prod *= heat_kernel_normal_deriv(v[k], t, l);
  }
  return prod;
}

double gauss_time_deriv(const double* v, int d, double t) {
  // Heat equation: d/dt Gamma = Laplacian Gamma.
  double sum = 0.0;
  std::vector<int> deriv(d, 0);
  for (int a = 0; a < d; ++a) {
    deriv.assign(d, 0);
    deriv[a] = 2;
    sum += gauss_deriv(v, d, t, deriv);
  }
  return sum;
}

double unit_ball_volume(int d) {
  // omega_d = pi^(d/2) / Gamma(d/2 + 1)
  return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double newton_constant(int d) {
  if (d < 3) throw std::invalid_argument("newton_kernel: d must be >= 3");
  return 1.0 / (d * (d - 2) * unit_ball_volume(d));
}

double newton_kernel(const Vec& x, int d) {
  double r = norm(x);
  if (!(r > 0.0)) throw SingularityError("newton_kernel: |x| must be > 0");
  return -newton_constant(d) * std::pow(r, 2.0 - d);
}

double newton_d1(const double* x, int d, int i) {
  double r2 = 0.0;
  for (int k = 0; k < d; ++k) r2 += x[k] * x[k];
  if (!(r2 > 0.0)) throw SingularityError("newton_deriv: |x| must be > 0");
  double c = newton_constant(d) * (d - 2);
  return c * x[i - 1] * std::pow(r2, -0.5 * d);
}

double newton_d2(const double* x, int d, int i, int j) {
  double r2 = 0.0;
  for (int k = 0; k < d; ++k) r2 += x[k] * x[k];
  if (!(r2 > 0.0)) throw SingularityError("newton_deriv: |x| must be > 0");
  double c = newton_constant(d) * (d - 2);
  double rmind = std::pow(r2, -0.5 * d);
  double term = (i == j) ? rmind : 0.0;
  return c * (term - d * x[i - 1] * x[j - 1] * rmind / r2);
}

double newton_deriv(const Vec& x, const std::vector<int>& multi_index, int d) {
  if (static_cast<int>(x.size()) != d ||
      static_cast<int>(multi_index.size()) != d)
    throw std::invalid_argument("newton_deriv: dimension mismatch");
  int total = 0;
  int i = 0, j = 0;  // 1-based axes carrying the derivatives
  for (int k = 0; k < d; ++k) {
    if (multi_index[k] < 0)
      throw std::invalid_argument("newton_deriv: negative order");
    total += multi_index[k];
    if (multi_index[k] >= 1 && i == 0) {
      i = k + 1;
      if (multi_index[k] >= 2) j = k + 1;
    } else if (multi_index[k] >= 1) {
      j = k + 1;
    }
  }
  if (total > 2) throw std::invalid_argument("newton_deriv: order must be <= 2");
  if (total == 0) return newton_kernel(x, d);
  if (total == 1) return newton_d1(x.data(), d, i);
  return newton_d2(x.data(), d, i, j);
}

// ---------------------------------------------------------------------------
// Bump-convolved Newtonian profiles. The integrand is smooth on the bump
// support as long as the evaluation point stays outside it (|x'| >= 2 versus
// support radius < 1), so a fixed polar Gauss rule converges superalgebraically.

namespace {

template <class F>
double bump_polar_integral(const ForceProfiles& profiles, int dim_t, F f) {
  using G = boost::math::quadrature::gauss<double, 16>;
  const double r0 = profiles.bump_radius;
  const auto& gx = G::abscissa();
  const auto& gw = G::weights();
  std::vector<double> rn, rw;
  for (std::size_t q = 0; q < gx.size(); ++q) {
    rn.push_back(0.5 * r0 * (1.0 + gx[q]));
    rw.push_back(0.5 * r0 * gw[q]);
    if (gx[q] != 0.0) {
      rn.push_back(0.5 * r0 * (1.0 - gx[q]));
      rw.push_back(0.5 * r0 * gw[q]);
    }
  }
  double acc = 0.0;
  Vec y(dim_t);
  if (dim_t == 2) {
    const int m = 40;
    for (std::size_t q = 0; q < rn.size(); ++q) {
      double r = rn[q];
      double ring = 0.0;
      for (int a = 0; a < m; ++a) {
        double th = (2.0 * M_PI * (a + 0.5)) / m;
        y[0] = profiles.center[0] + r * std::cos(th);
        y[1] = profiles.center[1] + r * std::sin(th);
        ring += f(y);
      }
      acc += rw[q] * r * ring * (2.0 * M_PI / m);
    }
    return acc;
  }
  const int mth = 20, mph = 40;
  for (std::size_t q = 0; q < rn.size(); ++q) {
    double r = rn[q];
    double shell = 0.0;
    for (int a = 0; a < mth; ++a) {
      double cth = -1.0 + (2.0 * (a + 0.5)) / mth;
      double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
      for (int b = 0; b < mph; ++b) {
        double ph = (2.0 * M_PI * (b + 0.5)) / mph;
        y[0] = profiles.center[0] + r * sth * std::cos(ph);
        y[1] = profiles.center[1] + r * sth * std::sin(ph);
        y[2] = profiles.center[2] + r * cth;
        shell += f(y);
      }
    }
    acc += rw[q] * r * r * shell * (2.0 / mth) * (2.0 * M_PI / mph);
  }
  return acc;
}

}  // namespace

double newton_hessian_profile(const HalfSpacePoint& x, int i,
                              const ModelParams& params,
                              const ForceProfiles& profiles,
                              const QuadSpec& spec) {
  (void)spec;
  const int n = params.n;
  x.validate(n);
  if (norm(x.tangential) < 2.0)
    throw std::domain_error("newton_hessian_profile: require |x'| >= 2");
  std::vector<double> u(n);
  return bump_polar_integral(profiles, n - 1, [&](const Vec& y) {
    for (int k = 0; k < n - 1; ++k) u[k] = x.tangential[k] - y[k];
    u[n - 1] = x.normal;
    return newton_d2(u.data(), n, i, 2) * g_tangential(y, profiles);
  });
}

double newton_gradient_profile(const HalfSpacePoint& x,
                               const ModelParams& params,
                               const ForceProfiles& profiles,
                               const QuadSpec& spec) {
  (void)spec;
  const int n = params.n;
  x.validate(n);
  if (norm(x.tangential) < 2.0)
    throw std::domain_error("newton_gradient_profile: require |x'| >= 2");
  std::vector<double> u(n);
  return bump_polar_integral(profiles, n - 1, [&](const Vec& y) {
    for (int k = 0; k < n - 1; ++k) u[k] = x.tangential[k] - y[k];
    u[n - 1] = x.normal;
    return newton_d1(u.data(), n, 2) * g_tangential(y, profiles);
  });
}

}  // namespace stokeslab
