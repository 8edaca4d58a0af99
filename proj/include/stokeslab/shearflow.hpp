// Explicit shear-flow solution of the forced 1-d heat problem on the half
// line, in both the published parametrization and the Duhamel form, with the
// boundary blow-up rate of its normal derivative.
#pragma once

#include "stokeslab/types.hpp"

namespace stokeslab {

struct ShearParams {
  double alpha = 0.25;  // in (0, 1/2)
  void validate() const {
    if (!(alpha > 0.0 && alpha < 0.5))
      throw std::invalid_argument("ShearParams: alpha must lie in (0, 1/2)");
  }
};

enum class ShearForm { printed, duhamel };

// w(x3, t) on t in (-4, 0), x3 >= 0, driven by g(t) = |t|^(alpha - 1).
// The printed form integrates g(t - tau - 4) against the erf profile in tau;
// the Duhamel form integrates g(s) erf(x3 / (2 sqrt(t - s))) ds. They agree
// under s = t - 4 - tau; both are kept so the agreement is checked, not
// assumed.
double shear_velocity(double x3, double t, const ShearParams& sp,
                      const QuadSpec& spec,
                      ShearForm form = ShearForm::duhamel);

// d/dx3 of the Duhamel form, by differentiation under the integral.
double shear_velocity_dx(double x3, double t, const ShearParams& sp,
                         const QuadSpec& spec);

// Fits the x3-exponent of d/dx3 w along the path t = -x3^2 / 8 over
// x3 in [1e-3, 1e-1]; the expected rate is 2 alpha - 1.
PowerLawFit shear_normal_deriv_rate(const ShearParams& sp,
                                    const QuadSpec& spec);

}  // namespace stokeslab
