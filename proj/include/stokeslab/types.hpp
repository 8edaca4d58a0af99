// Core domain types shared across the library: model parameters, half-space
// geometry, quadrature configuration and results, and the error hierarchy.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stokeslab {

using Vec = std::vector<double>;

// Parameters of the singular-force model: half-space dimension n >= 3,
// time-singularity exponent alpha, wall-singularity exponent beta, and the
// force amplitude a. Everything downstream is a function of these four.
struct ModelParams {
  int n = 3;
  double alpha = 0.9;
  double beta = 0.4;
  double a = 1.0;

  // Finite-energy (weak-solution) regime.
  bool weak_solution() const { return beta < 0.5; }

  void validate() const {
    if (n < 3) throw std::invalid_argument("ModelParams: n must be >= 3");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("ModelParams: alpha must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0))
      throw std::invalid_argument("ModelParams: beta must lie in (0,1)");
    if (!(a > 0.0)) throw std::invalid_argument("ModelParams: a must be > 0");
  }
};

// Point (x', x_n) in the closed half space, x_n >= 0.
struct HalfSpacePoint {
  Vec tangential;      // x', length n-1
  double normal = 0.0; // x_n

  HalfSpacePoint() = default;
  HalfSpacePoint(Vec xp, double xn) : tangential(std::move(xp)), normal(xn) {}

  // Reflection through the boundary plane, (y', -y_n).
  HalfSpacePoint reflected() const { return {tangential, -normal}; }

  void validate(int n) const {
    if (static_cast<int>(tangential.size()) != n - 1)
      throw std::invalid_argument("HalfSpacePoint: tangential size != n-1");
    if (normal < 0.0)
      throw std::invalid_argument("HalfSpacePoint: normal must be >= 0");
  }
};

struct SpaceTimePoint {
  HalfSpacePoint point;
  double t = 0.0;
};

// Tolerances and budgets for all integrals.
struct QuadSpec {
  double rel_tol = 1e-7;
  double abs_tol = 1e-13;
  int max_subdivisions = 4000;
  double grading_strength = 2.0;   // radial grading exponent near kernel peaks
  long long mc_samples = 200000;   // Monte Carlo fallback budget
  std::uint64_t seed = 20220901;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
      throw std::invalid_argument("QuadSpec: tolerances must be > 0");
    if (max_subdivisions < 1)
      throw std::invalid_argument("QuadSpec: max_subdivisions must be >= 1");
    if (grading_strength < 1.0)
      throw std::invalid_argument("QuadSpec: grading_strength must be >= 1");
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long long evaluations = 0;
};

// Raised when an integral cannot be resolved to tolerance within the
// subdivision budget; carries the best available estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, QuadResult best)
      : std::runtime_error(what + " (best value " + std::to_string(best.value) +
                           ", error estimate " +
                           std::to_string(best.error_estimate) + ")"),
        best_estimate(best) {}
  QuadResult best_estimate;
};

// Raised on evaluation at a kernel singularity (e.g. the Newtonian kernel at
// the origin).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Result of a log-log least-squares fit v ~ C * s^p.
struct PowerLawFit {
  double exponent = 0.0;
  double log_coefficient = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

// One evaluated field value at a space-time location. component is the velocity
// index (1-based) or one of the pressure tags below.
struct FieldSample {
  SpaceTimePoint location;
  std::string component; // "1".."n", "pi_b", "pi_g", "dnw1", ...
  double value = 0.0;
  double error_estimate = 0.0;
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }

inline double norm(const Vec& a) {
  double s = norm2(a);
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

}  // namespace stokeslab
