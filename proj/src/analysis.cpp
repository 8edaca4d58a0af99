#include "stokeslab/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "stokeslab/kernels.hpp"
#include "stokeslab/quad.hpp"

namespace stokeslab {

namespace {

PowerLawFit fit_impl(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4)
    throw FitError("fit_power_law: need at least 4 samples");
  double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
  int sign = 0;
  for (const auto& [s, v] : samples) {
    if (!(s > 0.0)) throw FitError("fit_power_law: s must be > 0");
    if (v == 0.0) throw FitError("fit_power_law: zero value");
    int sg = v > 0.0 ? 1 : -1;
    if (sign == 0) sign = sg;
    if (sg != sign) throw FitError("fit_power_law: sign change in values");
    smin = std::min(smin, s);
    smax = std::max(smax, s);
  }
  if (smax / smin < 10.0)
    throw FitError("fit_power_law: samples must span at least one decade");
  double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [s, v] : samples) {
    double x = std::log(s), y = std::log(std::fabs(v));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  double denom = n * sxx - sx * sx;
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.log_coefficient = (sy - fit.exponent * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (const auto& [s, v] : samples) {
    double y = std::log(std::fabs(v));
    double e = y - (fit.log_coefficient + fit.exponent * std::log(s));
    ss_res += e * e;
  }
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  fit.n_points = static_cast<int>(samples.size());
  return fit;
}

QuadResult integrate_power_local(const Fn1& f, double a, double b, double p,
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

PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& samples) {
  PowerLawFit fit = fit_impl(samples);
  if (fit.r_squared < 0.99)
    throw FitError("fit_power_law: r^2 below 0.99 (" +
                   std::to_string(fit.r_squared) + ")");
  return fit;
}

PowerLawFit fit_power_law_ungated(
    const std::vector<std::pair<double, double>>& samples) {
  return fit_impl(samples);
}

// ---------------------------------------------------------------------------

double boundary_layer_integral(const LayerArgs& args, const ModelParams& params,
                               const QuadSpec& spec) {
  const double al = params.alpha, be = params.beta;
  const double xn = args.xn, t = args.t, ga = args.gamma;
  if (!(t > 0.5)) return 0.0;
  if (xn < 0.0)
    throw std::domain_error("boundary_layer_integral: x_n must be >= 0");
  const double right_power = ga + 0.5 * (1.0 - be);
  if (right_power <= -1.0 && xn == 0.0)
    throw std::domain_error(
        "boundary_layer_integral: divergent at x_n = 0 in this branch");

  QuadSpec inner = spec;
  inner.max_subdivisions = 300;
  auto wall = [&](double sigma) {
    auto f = [&](double y) {
      double u = (xn + y);
      return std::pow(y, -be) * std::exp(-u * u / (4.0 * sigma));
    };
    return integrate_power_local(f, 0.0, 2.0, -be, Endpoint::lower, inner)
        .value;
  };

  QuadSpec outer = spec;
  outer.max_subdivisions = 500;
  const double m = 0.5 * (t + 0.5);
  auto left_f = [&](double tau) {
    return std::pow(tau - 0.5, -al) * std::pow(t - tau, ga) * wall(t - tau);
  };
  double left =
      integrate_power_local(left_f, 0.5, m, -al, Endpoint::lower, outer).value;

  double q = t - m;
  double right = 0.0;
  if (right_power > -0.999) {
    auto right_f = [&](double sigma) {
      return std::pow(t - sigma - 0.5, -al) * std::pow(sigma, ga) *
             wall(sigma);
    };
    right = integrate_power_local(right_f, 0.0, q,
                                  std::min(right_power, 4.0), Endpoint::lower,
                                  outer)
                .value;
  } else {
    // Branch with a non-integrable bare power: the Gaussian factor carries
    // the convergence; integrate on a log scale down to where it underflows.
    double sig_min = std::min(q, xn * xn / 200.0);
    auto right_f = [&](double v) {
      double sigma = std::exp(v);
      return sigma * std::pow(t - sigma - 0.5, -al) * std::pow(sigma, ga) *
             wall(sigma);
    };
    right = integrate_1d(right_f, std::log(sig_min), std::log(q), outer).value;
  }
  return left + right;
}

EnvelopeRatios verify_boundary_layer_bounds(const std::vector<double>& xn_grid,
                                            const std::vector<double>& t_grid,
                                            double gamma,
                                            const ModelParams& params,
                                            const QuadSpec& spec) {
  EnvelopeRatios out;
  const double al = params.alpha, be = params.beta;
  out.branch = (gamma - 0.5 * be > -1.5) ? 1 : 2;
  out.min_lower = out.min_upper = std::numeric_limits<double>::infinity();
  out.max_lower = out.max_upper = 0.0;
  for (double xn : xn_grid) {
    for (double t : t_grid) {
      double v = boundary_layer_integral({xn, t, gamma}, params, spec);
      double tm = t - 0.5;
      double lower, upper;
      if (out.branch == 1) {
        double powf = std::pow(tm, 1.5 - 0.5 * be - al + gamma);
        lower = powf * std::exp(-xn * xn / (2.0 * tm));
        upper = powf * std::exp(-xn * xn / (8.0 * tm));
      } else {
        double powf = std::pow(tm, -al) * std::pow(xn, 3.0 - be + 2.0 * gamma);
        lower = powf * std::exp(-xn * xn / (2.0 * tm));
        upper = powf * std::exp(-xn * xn / (8.0 * tm));
      }
      if (!(lower > 1e-300) || !(upper > 1e-300)) continue;  // guarded
      double rl = v / lower, ru = v / upper;
      out.min_lower = std::min(out.min_lower, rl);
      out.max_lower = std::max(out.max_lower, rl);
      out.min_upper = std::min(out.min_upper, ru);
      out.max_upper = std::max(out.max_upper, ru);
      ++out.grid_points;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SmoothingRemainderReport verify_smoothing_remainder(
    const HalfSpacePoint& x, const std::vector<double>& t_list, int k, int l,
    const ModelParams& params, const QuadSpec& spec) {
  const int n = params.n;
  x.validate(n);
  if (k < 0 || l < 0 || k + l > 2)
    throw std::invalid_argument("verify_smoothing_remainder: k + l <= 2");
  SmoothingRemainderReport rep;
  const Vec& xp = x.tangential;

  // Reference: the same derivative of the Newtonian kernel at (x', x_n).
  std::vector<int> midx(n, 0);
  midx[0] += k;
  midx[n - 1] += l;
  Vec xfull(n);
  for (int a = 0; a < n - 1; ++a) xfull[a] = xp[a];
  xfull[n - 1] = x.normal;
  double ref = newton_deriv(xfull, midx, n);

  std::vector<int> gd(n - 1, 0);
  gd[0] = k;
  for (double t : t_list) {
    if (!(norm(xp) >= std::max(1.0, std::sqrt(t))))
      throw std::domain_error(
          "verify_smoothing_remainder: require |x'| >= max(1, sqrt(t))");
    auto density = [&](const Vec& zp) {
      Vec w(n);
      for (int a = 0; a < n - 1; ++a) w[a] = zp[a];
      w[n - 1] = x.normal;
      if (l == 0) return newton_kernel(w, n);
      if (l == 1) return newton_d1(w.data(), n, n);
      return newton_d2(w.data(), n, n, n);
    };
    double conv = convolve_tangential(xp, t, density, spec, gd).value;
    double J = conv - ref;
    rep.series.emplace_back(t, std::fabs(J));
    rep.empirical_c = std::max(rep.empirical_c, std::fabs(J) / std::sqrt(t));
  }
  // Identity approximation at the smallest t.
  double tmin = *std::min_element(t_list.begin(), t_list.end());
  {
    auto density0 = [&](const Vec& zp) {
      Vec w(n);
      for (int a = 0; a < n - 1; ++a) w[a] = zp[a];
      w[n - 1] = x.normal;
      if (l == 0) return newton_kernel(w, n);
      if (l == 1) return newton_d1(w.data(), n, n);
      return newton_d2(w.data(), n, n, n);
    };
    double conv = convolve_tangential(xp, tmin, density0, spec, gd).value;
    rep.limit_error = std::fabs(conv - ref);
  }
  rep.fit = fit_power_law_ungated(rep.series);
  return rep;
}

// ---------------------------------------------------------------------------

PowerLawFit holder_exponent(const Vec& xp, int i, const ModelParams& params,
                            const ForceProfiles& profiles,
                            const QuadSpec& spec) {
  double eps0 = 3.0 - 2.0 * params.alpha - params.beta;
  if (!(eps0 > 0.0 && eps0 < 2.0))
    throw std::domain_error("holder_exponent: 3 - 2 alpha - beta not in (0,2)");
  std::vector<std::pair<double, double>> samples;
  const int npts = 9;
  for (int q = 0; q < npts; ++q) {
    double xn = 1e-2 * std::pow(10.0, q / double(npts - 1));
    double t = 0.5 + 2.0 * xn * xn;
    SpaceTimePoint at{{xp, xn}, t};
    SpaceTimePoint at0{{xp, 0.0}, t};
    double w1 = velocity_correction(at, i, params, profiles, spec).value;
    double w0 = velocity_correction(at0, i, params, profiles, spec).value;
    samples.emplace_back(xn, std::fabs(w1 - w0));
  }
  return fit_power_law(samples);
}

PowerLawFit holder_time_exponent(const HalfSpacePoint& x, int i,
                                 const ModelParams& params,
                                 const ForceProfiles& profiles,
                                 const QuadSpec& spec) {
  std::vector<std::pair<double, double>> samples;
  const int npts = 9;
  for (int q = 0; q < npts; ++q) {
    double tm = 1e-4 * std::pow(100.0, q / double(npts - 1));
    if (x.normal * x.normal < tm)
      throw std::domain_error("holder_time_exponent: need x_n^2 >= t - 1/2");
    SpaceTimePoint at{x, 0.5 + tm};
    double w = velocity_correction(at, i, params, profiles, spec).value;
    samples.emplace_back(tm, std::fabs(w));
  }
  return fit_power_law(samples);
}

// ---------------------------------------------------------------------------

ConditionsReport check_conditions(const ModelParams& params,
                                  const ConditionArgs& a, long long cd_grid) {
  ConditionsReport rep;
  const double al = params.alpha, be = params.beta;
  const double n = params.n;
  auto add = [&rep](const std::string& name, double margin) {
    rep.checks.push_back({name, margin > 0.0, margin});
  };

  // Normal-derivative blowup hypotheses.
  add("q_above_6", a.q - 6.0);
  add("blowup_rate_condition", 2.0 * al + be - (2.0 + 3.0 / a.q));

  // Global pressure bound hypotheses.
  add("p_above_2n_over_nm1", a.p - 2.0 * n / (n - 1.0));
  add("beta_above_trace_index", be - n / ((n - 1.0) * a.p));
  add("pressure_integrability",
      2.0 / a.q + n / a.p + 1.0 - (2.0 * al + n * be));

  // Local pressure blowup hypothesis.
  add("pressure_blowup_condition", 2.0 * al + be - (1.0 + 2.0 / a.q));

  // Perturbation parameter chain.
  add("s_lower", a.s - std::max(0.5 * (n + 2.0), 4.0));
  add("s_upper", n + 2.0 - a.s);
  add("r_lower", a.r - a.s * (n + 2.0) / (n + 2.0 - a.s));
  add("r_above_2s", a.r - 2.0 * a.s);
  double alpha6 = 1.0 - (n + 2.0) / (4.0 * a.r) + 0.5 * a.delta;
  double beta6 = (n + 2.0) / (2.0 * a.r) - a.eps;
  rep.derived_alpha = alpha6;
  rep.derived_beta = beta6;
  add("eps_positive", a.eps);
  add("delta_above_eps", a.delta - a.eps);
  add("n_eps_above_delta", n * a.eps - a.delta);
  add("n_eps_below_window", (n + 2.0) / (2.0 * a.r) - n * a.eps);
  add("beta6_below_half", 0.5 - beta6);
  add("r0_condition", a.delta - a.eps - 3.0 / a.r0);
  add("perturbed_blowup_rate", 2.0 * alpha6 + beta6 - (2.0 + 3.0 / a.r0));
  add("perturbed_integrability",
      2.0 + (n + 2.0) / a.r - (2.0 * alpha6 + n * beta6));

  // Randomized emptiness searches for the two compatibility remarks.
  long long side = std::max<long long>(2, std::llround(std::sqrt(double(cd_grid))));
  rep.cd_pressure_members = 0;
  rep.cd_interp_members = 0;
  for (long long ia = 0; ia < side; ++ia) {
    for (long long ib = 0; ib < side; ++ib) {
      double aa = (ia + 0.5) / double(side);
      double bb = (ib + 0.5) / double(side);
      bool inC = 2.0 * aa + n * bb < 2.0 / a.q + n / a.p + 1.0;
      bool inD =
          bb > n / ((n - 1.0) * a.p) && 1.0 + 2.0 / a.q < 2.0 * aa + bb;
      if (inC && inD) ++rep.cd_pressure_members;
      bool inC2 = (1.0 / a.q1 - 1.0 / a.q + 0.5 * n / a.p1 - 0.5 * n / a.p <=
                   0.5) &&
                  aa < 1.0 / a.q1 && bb < 1.0 / a.p1;
      bool inD2 = 0.5 + 1.0 / a.q < aa + 0.5 * bb;
      if (inC2 && inD2) ++rep.cd_interp_members;
    }
  }
  return rep;
}

}  // namespace stokeslab
