// Solution fields of the forced half-space Stokes problem, evaluated through
// the separable factorizations of the representation formulas: the reflection
// (image-Gaussian) part V, the correction part W, the singular normal-
// derivative term B^w, the two pressure parts, and the assembled normal
// derivative. All evaluation points live in the far region |x'| >= 2.
#pragma once

#include "stokeslab/force.hpp"
#include "stokeslab/greens.hpp"
#include "stokeslab/types.hpp"

namespace stokeslab {

// Reflection part: (Gamma(x-y) - Gamma(x-y*)) convolved with f_i in space
// and the singular time factor. Vanishes for t <= 1/2 and for i not in {2, n}.
FieldSample velocity_reflection(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec);

// Normal derivative of the reflection part.
FieldSample velocity_reflection_dn(const SpaceTimePoint& x, int i,
                                   const ModelParams& params,
                                   const ForceProfiles& profiles,
                                   const QuadSpec& spec);

// Correction part W_i: the correction tensor column 2 convolved with f_2.
FieldSample velocity_correction(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec);

// The singular term of the normal derivative (tangential Hessian of the
// Newtonian kernel against the boundary heat layer). i in 1..n-1.
FieldSample boundary_blowup_term(const SpaceTimePoint& x, int i,
                                 const ModelParams& params,
                                 const ForceProfiles& profiles,
                                 const QuadSpec& spec);

// x_n-derivative of the blowup term (the wall-layer factor differentiates in
// closed form); used for the lower-bound shape scan.
FieldSample boundary_blowup_term_dn(const SpaceTimePoint& x, int i,
                                    const ModelParams& params,
                                    const ForceProfiles& profiles,
                                    const QuadSpec& spec);

// The regular piece D_2 W^G_i of the normal derivative.
FieldSample normal_deriv_regular_piece(const SpaceTimePoint& x, int i,
                                       const ModelParams& params,
                                       const ForceProfiles& profiles,
                                       const QuadSpec& spec);

// Assembled normal derivative D_n w_i = D_n V_i + D_2 W^G_i + B^w_i, together
// with the pieces (value breakdown is needed by the dominance checks).
struct NormalDerivParts {
  FieldSample total;
  double reflection_dn = 0.0;
  double regular_piece = 0.0;
  double blowup_term = 0.0;
};
NormalDerivParts normal_deriv_w(const SpaceTimePoint& x, int i,
                                const ModelParams& params,
                                const ForceProfiles& profiles,
                                const QuadSpec& spec);

// Singular pressure part (more singular in t - 1/2 by a half power).
FieldSample pressure_singular_part(const SpaceTimePoint& x,
                                   const ModelParams& params,
                                   const ForceProfiles& profiles,
                                   const QuadSpec& spec);

// Regular pressure part.
FieldSample pressure_regular_part(const SpaceTimePoint& x,
                                  const ModelParams& params,
                                  const ForceProfiles& profiles,
                                  const QuadSpec& spec);

// Smoothed Gaussian field g_T * D^deriv Gamma' at time width tau; exposed for
// tests and for the profile machinery.
double smoothed_gauss_field(const Vec& v, double tau,
                            const std::vector<int>& deriv,
                            const ModelParams& params,
                            const ForceProfiles& profiles);

// Tangential profile: ring averages of the smoothed field around a center,
// dotted against radial Newtonian kernels at arbitrary heights. Building one
// is the expensive step; evaluating against kernels is cheap, so sweeps over
// the kernel height share a profile.
class TangentialProfile {
 public:
  TangentialProfile(const Vec& center, double tau, std::vector<int> deriv,
                    const ModelParams& params, const ForceProfiles& profiles);

  // integral of N(z', h) (resp. D_n N(z', h)) times field(center - z') dz'
  double against_newton(double h) const;
  double against_newton_dn(double h) const;

  double field_at_center() const { return center_value_; }

 private:
  int dim_;
  double newton_c_;
  std::vector<double> radii_, weights_, ring_avg_;
  double center_value_;
  double min_radius_;
};

}  // namespace stokeslab
