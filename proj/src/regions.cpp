#include "stokeslab/regions.hpp"

#include <cmath>

#include "stokeslab/quad.hpp"

namespace stokeslab {

namespace {

void check_axes(const Vec& xp, int i, int n) {
  if (i == 2) throw std::domain_error("regions: i must differ from 2");
  if (i < 1 || i > n - 1)
    throw std::domain_error("regions: i must lie in 1..n-1");
  if (static_cast<int>(xp.size()) != n - 1)
    throw std::invalid_argument("regions: x' must have length n-1");
}

}  // namespace

std::string to_string(RegionKind k) {
  switch (k) {
    case RegionKind::A_i1: return "A_i1";
    case RegionKind::A_i2: return "A_i2";
    case RegionKind::B_i1: return "B_i1";
    case RegionKind::B_i2: return "B_i2";
    default: return "none";
  }
}

bool in_A(const Vec& xp, int i, int n) {
  check_axes(xp, i, n);
  double xi = xp[i - 1], x2 = xp[1];
  double axi = std::fabs(xi), ax2 = std::fabs(x2);
  if (!(axi > 2.0 && ax2 > 2.0)) return false;
  if (!(0.5 * axi <= ax2 && ax2 <= 2.0 * axi)) return false;
  return norm2(xp) <= 2.0 * (xi * xi + x2 * x2);
}

bool in_A1(const Vec& xp, int i, int n) {
  return in_A(xp, i, n) && xp[i - 1] * xp[1] > 0.0;
}

bool in_A2(const Vec& xp, int i, int n) {
  return in_A(xp, i, n) && xp[i - 1] * xp[1] < 0.0;
}

bool in_B1(const Vec& xp, int i, int n) {
  check_axes(xp, i, n);
  double axi = std::fabs(xp[i - 1]);
  double ax2 = std::fabs(xp[1]);
  return norm(xp) / (4.0 * std::sqrt(static_cast<double>(n))) > ax2 &&
         axi > 2.0;
}

bool in_B2_printed(const Vec& xp, int i, int n) {
  check_axes(xp, i, n);
  double ax2 = std::fabs(xp[1]);
  return 4.0 * std::sqrt(static_cast<double>(n)) * norm(xp) < ax2 && ax2 > 2.0;
}

bool in_B2_corrected(const Vec& xp, int i, int n) {
  check_axes(xp, i, n);
  double ax2 = std::fabs(xp[1]);
  double perp2 = 0.0;  // |x' - x_2 e_2|^2
  for (std::size_t k = 0; k < xp.size(); ++k)
    if (k != 1) perp2 += xp[k] * xp[k];
  return 4.0 * std::sqrt(static_cast<double>(n)) * std::sqrt(perp2) < ax2 &&
         ax2 > 2.0;
}

RegionLabel classify(const Vec& xp, int i, int n, bool corrected_b2) {
  if (in_A1(xp, i, n)) return {RegionKind::A_i1, i};
  if (in_A2(xp, i, n)) return {RegionKind::A_i2, i};
  if (in_B1(xp, i, n)) return {RegionKind::B_i1, i};
  bool b2 = corrected_b2 ? in_B2_corrected(xp, i, n) : in_B2_printed(xp, i, n);
  if (b2) return {RegionKind::B_i2, i};
  return {RegionKind::none, 0};
}

// ---------------------------------------------------------------------------

namespace {

Vec sample_unit_ball(int d, std::uint64_t seed, std::uint64_t* ctr) {
  // Rejection from the cube; fine for d <= 3.
  while (true) {
    Vec y(d);
    double r2 = 0.0;
    for (int k = 0; k < d; ++k) {
      y[k] = 2.0 * counter_uniform(seed, (*ctr)++) - 1.0;
      r2 += y[k] * y[k];
    }
    if (r2 < 1.0) return y;
  }
}

}  // namespace

std::vector<SignInequalityReport> verify_sign_inequalities(long long samples,
                                                           std::uint64_t seed,
                                                           int n) {
  if (samples < 1)
    throw std::invalid_argument("verify_sign_inequalities: samples >= 1");
  const int d = n - 1;
  const int i = 1;  // axis pair (1, 2); other axes are symmetric
  std::vector<SignInequalityReport> out;

  struct Case {
    std::string name;
    int which;  // 0: A1 product bound, 1: A2 product bound, 2: B1 gap,
                // 3: corrected B2 reversed gap
  };
  const std::vector<Case> cases = {
      {"product_lower_bound_on_A11", 0},
      {"product_upper_bound_on_A12", 1},
      {"tangential_gap_on_B11", 2},
      {"tangential_gap_reversed_on_corrected_B12", 3},
  };

  for (const auto& c : cases) {
    SignInequalityReport rep;
    rep.name = c.name;
    rep.samples = samples;
    rep.min_slack = std::numeric_limits<double>::infinity();
    rep.holds = true;
    std::uint64_t ctr = 1000003ull * (c.which + 1);
    long long accepted = 0;
    while (accepted < samples) {
      // Draw x' from a bounded patch of the target set by rejection.
      Vec xp(d);
      for (int k = 0; k < d; ++k)
        xp[k] = 100.0 * (2.0 * counter_uniform(seed, ctr++) - 1.0);
      bool member = false;
      switch (c.which) {
        case 0: member = in_A1(xp, i, n); break;
        case 1: member = in_A2(xp, i, n); break;
        case 2: member = in_B1(xp, i, n); break;
        case 3: member = in_B2_corrected(xp, i, n); break;
      }
      if (!member) continue;
      ++accepted;
      Vec yp = sample_unit_ball(d, seed ^ 0xabcdef, &ctr);

      double slack = 0.0;
      if (c.which == 0) {
        // (x_i - y_i)(x_2 - y_2) >= x_i x_2 / 4
        slack = (xp[0] - yp[0]) * (xp[1] - yp[1]) - 0.25 * xp[0] * xp[1];
      } else if (c.which == 1) {
        // (x_i - y_i)(x_2 - y_2) <= x_i x_2 / 4
        slack = 0.25 * xp[0] * xp[1] - (xp[0] - yp[0]) * (xp[1] - yp[1]);
      } else {
        double g2 = 0.0;  // |x' - y'|^2
        for (int k = 0; k < d; ++k) {
          double u = xp[k] - yp[k];
          g2 += u * u;
        }
        double q = g2 - n * (xp[1] - yp[1]) * (xp[1] - yp[1]);
        if (c.which == 2) {
          // |x'-y'|^2 - n (x_2-y_2)^2 >= |x'-y'|^2 / 64
          slack = q - g2 / 64.0;
        } else {
          // reversed on the corrected second B-set
          slack = -q - g2 / 64.0;
        }
      }
      if (slack < rep.min_slack) rep.min_slack = slack;
      if (slack < 0.0 && rep.holds) {
        rep.holds = false;
        rep.counterexample = std::make_pair(xp, yp);
      }
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace stokeslab
