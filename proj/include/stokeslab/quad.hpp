// Quadrature engine: deterministic adaptive Gauss-Kronrod panels in 1-d,
// endpoint-power desingularization by substitution, adaptive tensor cubature
// up to dimension 4 with a seeded Monte Carlo fallback above, and the
// Gaussian-weighted tangential convolution used by the kernel evaluators.
#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "stokeslab/types.hpp"

namespace stokeslab {

using Fn1 = std::function<double(double)>;
using FnNd = std::function<double(const Vec&)>;

enum class Endpoint { lower, upper };

// Adaptive panel integration of f over [a, b].
QuadResult integrate_1d(const Fn1& f, double a, double b, const QuadSpec& spec);

// Same, with caller-chosen initial panel edges (must be increasing, spanning
// the interval). Useful when the integrand's features are known in advance.
QuadResult integrate_1d_panels(const Fn1& f, const std::vector<double>& edges,
                               const QuadSpec& spec);

// Integral of f with an integrable power singularity f ~ (s - endpoint)^sigma,
// sigma in (-1, 0], at the named endpoint. The singularity is removed by the
// substitution u = (s - endpoint)^(1+sigma); exact for pure powers.
QuadResult integrate_singular_1d(const Fn1& f, double a, double b,
                                 double endpoint_exponent, Endpoint at,
                                 const QuadSpec& spec);

// Same substitution for any exponent > -1: negative powers are
// desingularized, positive ones have their derivative kink absorbed. Below
// the floating-point resolution of the endpoint the integrand is evaluated
// through its exact power-factored form, so offsets that would be absorbed
// into the endpoint never reach f.
QuadResult integrate_graded_1d(const Fn1& f, double a, double b,
                               double endpoint_exponent, Endpoint at,
                               const QuadSpec& spec);

// Tensor-product cubature over an axis-aligned box (adaptive cell splitting,
// dimensions 1..4). Dimensions >= 5 fall back to seeded Monte Carlo with the
// statistical error reported in error_estimate.
QuadResult integrate_nd(const FnNd& f,
                        const std::vector<std::pair<double, double>>& box,
                        const QuadSpec& spec);

// Computes  integral over R^d of  D^deriv Gamma_d(x - z, t) * density(z) dz,
// where Gamma_d is the d-dimensional Gaussian heat kernel and deriv is a
// multi-index of Gaussian derivatives (empty = plain kernel). The domain is
// truncated at radius 10 * max(|x|, sqrt(t)) around x and the Gaussian tail
// bound (exact mass outside the ball, times a sampled density bound) is added
// to error_estimate.
QuadResult convolve_tangential(const Vec& x, double t, const FnNd& density,
                               const QuadSpec& spec,
                               const std::vector<int>& deriv = {});

// Counter-based generator: uniform in [0,1), fully determined by (seed, ctr).
double counter_uniform(std::uint64_t seed, std::uint64_t ctr);

// Runs f(i) for i in [0, count) on `workers` threads (0 = hardware count) and
// returns results in index order; the reduction order is fixed, so output is
// independent of scheduling.
std::vector<double> parallel_map(std::size_t count, int workers,
                                 const std::function<double(std::size_t)>& f);

}  // namespace stokeslab
