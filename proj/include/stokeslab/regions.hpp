// Boundary-set predicates on the tangential plane and randomized verification
// of the pointwise sign inequalities they guarantee against offsets in the
// unit ball (the mechanism that fixes the sign of the Hessian profiles).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stokeslab/types.hpp"

namespace stokeslab {

enum class RegionKind { A_i1, A_i2, B_i1, B_i2, none };

struct RegionLabel {
  RegionKind kind = RegionKind::none;
  int i = 0;  // only meaningful when kind != none
};

std::string to_string(RegionKind k);

// Classifies x' for the axis pair (i, 2), i != 2, testing in the order
// A_i1, A_i2, B_i1, B_i2. When corrected_b2 is true the second B-set uses the
// nonempty corrected variant {4 sqrt(n) |x' - x_2 e_2| < |x_2|, |x_2| > 2}
// instead of the printed one (which is empty: |x_2| <= |x'| always).
RegionLabel classify(const Vec& xp, int i, int n, bool corrected_b2 = false);

// Individual predicates (exposed for the disjointness and emptiness tests).
bool in_A(const Vec& xp, int i, int n);
bool in_A1(const Vec& xp, int i, int n);
bool in_A2(const Vec& xp, int i, int n);
bool in_B1(const Vec& xp, int i, int n);
bool in_B2_printed(const Vec& xp, int i, int n);
bool in_B2_corrected(const Vec& xp, int i, int n);

struct SignInequalityReport {
  std::string name;
  long long samples = 0;
  double min_slack = 0.0;  // minimum of (lhs - rhs) over all samples
  bool holds = false;
  std::optional<std::pair<Vec, Vec>> counterexample;  // (x', y') if found
};

// Draws x' from bounded patches of the named sets and y' from the unit ball,
// then checks each quadratic sign inequality pointwise.
std::vector<SignInequalityReport> verify_sign_inequalities(long long samples,
                                                           std::uint64_t seed,
                                                           int n);

}  // namespace stokeslab
