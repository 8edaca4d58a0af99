// Closed-form kernels: Gaussian heat kernels in any dimension with arbitrary
// normal-derivative order (Hermite-type polynomial recursion), the Newtonian
// kernel with first and second derivatives, and the sign-definite Newtonian
// profiles obtained by convolving against the tangential force bump.
#pragma once

#include <vector>

#include "stokeslab/force.hpp"
#include "stokeslab/types.hpp"

namespace stokeslab {

// Gaussian heat kernel (4 pi t)^(-d/2) exp(-|x|^2 / 4t).
double heat_kernel(const Vec& x, double t, int d);
double heat_kernel_radial2(double r2, double t, int d);  // takes |x|^2

// Hermite-type polynomial P_l from the derivative formula
// D^l Gamma_1(x,t) = (2 sqrt(pi))^(-1) t^(-(l+1)/2) P_l(eta) e^(-eta^2),
// eta = x / (2 sqrt(t)), generated by P_l = P'_(l-1) - 2 eta P_(l-1).
double hermite_poly(int l, double eta);
std::vector<long long> hermite_poly_coeffs(int l);  // exact coefficients

// l-th derivative of the 1-d heat kernel in the spatial variable.
double heat_kernel_normal_deriv(double xn, double t, int l);

// Mixed partial D^deriv Gamma_d(v, t); deriv[k] is the order along axis k
// (entries beyond deriv.size() are zero).
double gauss_deriv(const double* v, int d, double t,
                   const std::vector<int>& deriv);
double gauss_time_deriv(const double* v, int d, double t);  // d/dt Gamma_d

// Newtonian kernel N(x) = -c_d |x|^(2-d), c_d = 1/(d (d-2) omega_d) with
// omega_d the unit-ball volume, so that N is the fundamental solution of the
// Laplacian. d >= 3.
double newton_kernel(const Vec& x, int d);
double newton_constant(int d);  // c_d
double unit_ball_volume(int d);

// Partial derivative of N of order |multi_index| <= 2 (closed form).
double newton_deriv(const Vec& x, const std::vector<int>& multi_index, int d);

// Convenience closed forms used in hot loops (1-based indices).
double newton_d1(const double* x, int d, int i);          // D_i N
double newton_d2(const double* x, int d, int i, int j);   // D_i D_j N

// Profile of the Newtonian Hessian D_i D_2 N against the tangential bump:
// strictly negative where the i- and 2-offsets agree in sign, strictly
// positive where they disagree. Evaluation point must satisfy |x'| >= 2.
double newton_hessian_profile(const HalfSpacePoint& x, int i,
                              const ModelParams& params,
                              const ForceProfiles& profiles,
                              const QuadSpec& spec);

// Profile of the Newtonian gradient D_2 N against the tangential bump.
double newton_gradient_profile(const HalfSpacePoint& x,
                               const ModelParams& params,
                               const ForceProfiles& profiles,
                               const QuadSpec& spec);

}  // namespace stokeslab
