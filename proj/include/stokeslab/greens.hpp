// Half-space unsteady Stokes Green tensor: the image-Gaussian part plus the
// correction tensor L (an iterated Newtonian/Gaussian layer integral), the
// pressure kernel, and numeric verification of the pointwise envelope bound
// on L and its derivatives.
#pragma once

#include <string>
#include <vector>

#include "stokeslab/kernels.hpp"
#include "stokeslab/types.hpp"

namespace stokeslab {

struct KernelEval {
  double value = 0.0;
  double error_estimate = 0.0;
  double bound_value = 0.0;  // envelope at the same arguments, constant 1
};

// Layer integral over z' in R^(n-1) of D^gamma_deriv Gamma'(u' - z', t) times
// D^nu N(z', h): the workhorse behind the correction tensor and the pressure
// kernel. nu is a multi-index on the full n coordinates with |nu| <= 2; the
// tangential Gaussian derivative order is unrestricted. Set dt_factor to
// differentiate the Gaussian once in time.
double gauss_newton_layer(const Vec& u, double t, const std::vector<int>& gamma_deriv,
                          const std::vector<int>& nu, double h, int n,
                          const QuadSpec& spec, bool dt_factor = false);

// Correction tensor L_ij(x, y, t): vanishes when j = n or x_n = 0; otherwise
// -4 D_xj of the slab integral of Gamma(x - y* - z, t) D_zi N(z).
KernelEval green_correction(const HalfSpacePoint& x, const HalfSpacePoint& y,
                            double t, int i, int j, const ModelParams& params,
                            const QuadSpec& spec);

// Derivative version: k-th time derivative (k <= 1), tangential multi-index
// lp (|lp| <= 2), normal order ln (<= 2), applied analytically under the
// integrals.
KernelEval green_correction_deriv(const HalfSpacePoint& x,
                                  const HalfSpacePoint& y, double t, int i,
                                  int j, int k, const std::vector<int>& lp,
                                  int ln, const ModelParams& params,
                                  const QuadSpec& spec);

// Envelope e^(-y_n^2/t) / (t^k (t + x_n^2)^(ln/2) (|x - y*|^2 + t)^((n+|lp|)/2)).
double green_correction_bound(const HalfSpacePoint& x, const HalfSpacePoint& y,
                              double t, int k, const std::vector<int>& lp,
                              int ln, const ModelParams& params);

// Full Green tensor K_ij = delta_ij (Gamma(x-y,t) - Gamma(x-y*,t)) + L_ij.
double green_tensor(const HalfSpacePoint& x, const HalfSpacePoint& y, double t,
                    int i, int j, const ModelParams& params,
                    const QuadSpec& spec);

// Pressure kernel: 4 (1 - delta_jn) D_xj (D_xn + D_yn) of the plane integral
// of N(x - z') Gamma(z' - y, t). Requires x_n > 0.
double pressure_kernel(const HalfSpacePoint& x, const HalfSpacePoint& y,
                       double t, int j, const ModelParams& params,
                       const QuadSpec& spec);

struct BoundGridEntry {
  HalfSpacePoint x, y;
  double t = 0.0;
  int i = 1, j = 1;
  int k = 0;           // time-derivative order
  std::vector<int> lp; // tangential multi-index
  int ln = 0;          // normal-derivative order
};

struct BoundCheckEntry {
  BoundGridEntry args;
  double value = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct BoundReport {
  double max_ratio = 0.0;
  BoundCheckEntry argmax;
  std::vector<BoundCheckEntry> entries;
};

// Sweeps the grid, computing |derivative of L| / envelope; ratios must stay
// finite and stable under refinement (asserted by callers, reported here).
// Pairs where the envelope underflows are skipped.
BoundReport verify_green_correction_bound(const std::vector<BoundGridEntry>& grid,
                                          const ModelParams& params,
                                          const QuadSpec& spec, int workers = 0);

}  // namespace stokeslab
