// The divergence-free singular force and its three building blocks: a smooth
// tangential bump g_T, a wall profile g_N that equals x_n^(1-beta) up to the
// cutoff, and the time factor h(t) = (t - 1/2)^(-alpha) past t = 1/2.
#pragma once

#include "stokeslab/types.hpp"

namespace stokeslab {

struct ForceProfiles {
  double bump_radius = 0.9;   // support radius of g_T, in (0,1)
  double cutoff_start = 1.0;  // g_N equals y^(1-beta) up to here
  double cutoff_end = 1.9;    // g_N vanishes beyond, in (1,2)
  double normalization = 0.0; // set by normalize(); makes integral of g_T = 1
  Vec center;                 // bump center, defaults to the origin

  void validate() const {
    if (!(bump_radius > 0.0 && bump_radius < 1.0))
      throw std::invalid_argument("ForceProfiles: bump_radius must be in (0,1)");
    if (!(cutoff_end > 1.0 && cutoff_end < 2.0))
      throw std::invalid_argument("ForceProfiles: cutoff_end must be in (1,2)");
  }
};

// Profiles with the unit-mass normalization precomputed for dimension n.
ForceProfiles make_profiles(int n, double bump_radius = 0.9,
                            double cutoff_end = 1.9);

// Smooth bump c * exp(-1/(r0^2 - |y'|^2)) on |y' - center| < r0, zero outside.
double g_tangential(const Vec& yp, const ForceProfiles& profiles);

// First and second partials of g_tangential (closed form).
double g_tangential_deriv(const Vec& yp, int i, const ForceProfiles& profiles);
double g_tangential_deriv2(const Vec& yp, int i, int j,
                           const ForceProfiles& profiles);

// Wall profile y^(1-beta) * S(y) with a smooth step S: 1 on [0,1], 0 beyond
// cutoff_end.
double g_normal(double yn, const ModelParams& params,
                const ForceProfiles& profiles);

// d/dy of g_normal; carries the y^(-beta) wall singularity.
double g_normal_deriv(double yn, const ModelParams& params,
                      const ForceProfiles& profiles);

// Time factor (t - 1/2)^(-alpha) for t > 1/2, zero otherwise.
double h_time(double t, const ModelParams& params);

// The full force vector at (y, t): component 2 is a*g_T*(g_N)'*h, component n
// is -a*(D_2 g_T)*g_N*h, all others vanish. Divergence free by construction.
Vec force_at(const HalfSpacePoint& y, double t, const ModelParams& params,
             const ForceProfiles& profiles);

}  // namespace stokeslab
