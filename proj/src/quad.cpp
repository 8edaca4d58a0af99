#include "stokeslab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <queue>
#include <thread>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "stokeslab/kernels.hpp"

namespace stokeslab {

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b;
  double value;
  double err;
  long long order;  // insertion order, deterministic tie-break
};

struct PanelWorse {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.order > q.order;
  }
};

Panel eval_panel(const Fn1& f, double a, double b, long long order) {
  double err = 0.0;
  double v = GK15::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err, order};
}

// Sum panel values left to right for a reproducible final reduction.
template <class Heap>
QuadResult reduce_sorted(Heap heap, long long evals) {
  std::vector<Panel> tmp;
  tmp.reserve(heap.size());
  while (!heap.empty()) {
    tmp.push_back(heap.top());
    heap.pop();
  }
  std::sort(tmp.begin(), tmp.end(),
            [](const Panel& p, const Panel& q) { return p.a < q.a; });
  double v = 0.0, e = 0.0;
  for (const auto& p : tmp) {
    v += p.value;
    e += p.err;
  }
  return {v, e, evals};
}

}  // namespace

QuadResult integrate_1d_panels(const Fn1& f, const std::vector<double>& edges,
                               const QuadSpec& spec) {
  spec.validate();
  if (edges.size() < 2) throw std::invalid_argument("integrate_1d: bad edges");
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> heap;
  long long order = 0;
  long long evals = 0;
  double total_v = 0.0, total_e = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i + 1] > edges[i]))
      throw std::invalid_argument("integrate_1d: edges not increasing");
    Panel p = eval_panel(f, edges[i], edges[i + 1], order++);
    total_v += p.value;
    total_e += p.err;
    heap.push(p);
    evals += 15;
  }
  int splits = 0;
  while (total_e > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_v))) {
    if (splits >= spec.max_subdivisions) {
      QuadResult best = reduce_sorted(heap, evals);
      throw AccuracyError("integrate_1d: subdivision budget exhausted", best);
    }
    Panel worst = heap.top();
    if (worst.err == 0.0) break;  // nothing left to gain
    heap.pop();
    double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      // Interval at floating-point resolution; freeze it.
      total_e -= worst.err;
      worst.err = 0.0;
      heap.push(worst);
      ++splits;
      continue;
    }
    total_v -= worst.value;
    total_e -= worst.err;
    Panel l = eval_panel(f, worst.a, m, order++);
    Panel r = eval_panel(f, m, worst.b, order++);
    total_v += l.value + r.value;
    total_e += l.err + r.err;
    heap.push(l);
    heap.push(r);
    evals += 30;
    ++splits;
  }
  return reduce_sorted(heap, evals);
}

QuadResult integrate_1d(const Fn1& f, double a, double b,
                        const QuadSpec& spec) {
  if (a == b) return {0.0, 0.0, 0};
  return integrate_1d_panels(f, {a, b}, spec);
}

QuadResult integrate_singular_1d(const Fn1& f, double a, double b,
                                 double endpoint_exponent, Endpoint at,
                                 const QuadSpec& spec) {
  if (!(endpoint_exponent > -1.0))
    throw std::domain_error("integrate_singular_1d: exponent must be > -1");
  if (endpoint_exponent > 0.0)
    throw std::domain_error("integrate_singular_1d: exponent must be <= 0");
  if (!(b > a)) return {0.0, 0.0, 0};
  const double p = 1.0 + endpoint_exponent;  // in (0, 1]
  const double q = 1.0 / p;
  const double umax = std::pow(b - a, p);
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

// ---------------------------------------------------------------------------
// Multi-dimensional cubature.

namespace {

template <unsigned N>
double tensor_gauss(const FnNd& f, const std::vector<double>& lo,
                    const std::vector<double>& hi, long long* evals) {
  using G = boost::math::quadrature::gauss<double, N>;
  const int d = static_cast<int>(lo.size());
  std::vector<double> nodes, weights;
  const auto& half_x = G::abscissa();  // non-negative half of the rule
  const auto& half_w = G::weights();
  for (std::size_t i = 0; i < half_x.size(); ++i) {
    nodes.push_back(half_x[i]);
    weights.push_back(half_w[i]);
    if (half_x[i] != 0.0) {
      nodes.push_back(-half_x[i]);
      weights.push_back(half_w[i]);
    }
  }
  const int m = static_cast<int>(nodes.size());
  std::vector<int> idx(d, 0);
  Vec x(d);
  double sum = 0.0;
  while (true) {
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      double c = 0.5 * (lo[k] + hi[k]);
      double h = 0.5 * (hi[k] - lo[k]);
      x[k] = c + h * nodes[idx[k]];
      w *= h * weights[idx[k]];
    }
    sum += w * f(x);
    ++*evals;
    int k = 0;
    while (k < d && ++idx[k] == m) idx[k++] = 0;
    if (k == d) break;
  }
  return sum;
}

struct Cell {
  std::vector<double> lo, hi;
  double value;
  double err;
  long long order;
};

struct CellWorse {
  bool operator()(const Cell& p, const Cell& q) const {
    if (p.err != q.err) return p.err < q.err;
    return p.order > q.order;
  }
};

Cell eval_cell(const FnNd& f, std::vector<double> lo, std::vector<double> hi,
               long long order, long long* evals) {
  double coarse = tensor_gauss<5>(f, lo, hi, evals);
  double fine = tensor_gauss<8>(f, lo, hi, evals);
  return {std::move(lo), std::move(hi), fine, std::fabs(fine - coarse), order};
}

QuadResult integrate_mc(const FnNd& f,
                        const std::vector<std::pair<double, double>>& box,
                        const QuadSpec& spec) {
  const int d = static_cast<int>(box.size());
  double vol = 1.0;
  for (const auto& [lo, hi] : box) vol *= (hi - lo);
  const long long nsamp = std::max<long long>(spec.mc_samples, 16);
  double sum = 0.0, sumsq = 0.0;
  Vec x(d);
  for (long long i = 0; i < nsamp; ++i) {
    for (int k = 0; k < d; ++k) {
      double u =
          counter_uniform(spec.seed, static_cast<std::uint64_t>(i) * d + k);
      x[k] = box[k].first + u * (box[k].second - box[k].first);
    }
    double v = f(x);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / static_cast<double>(nsamp);
  double var = std::max(0.0, sumsq / static_cast<double>(nsamp) - mean * mean);
  double se = vol * std::sqrt(var / static_cast<double>(nsamp));
  return {vol * mean, se, nsamp};
}

}  // namespace

QuadResult integrate_nd(const FnNd& f,
                        const std::vector<std::pair<double, double>>& box,
                        const QuadSpec& spec) {
  spec.validate();
  const int d = static_cast<int>(box.size());
  if (d < 1) throw std::invalid_argument("integrate_nd: empty box");
  if (d >= 5) return integrate_mc(f, box, spec);

  std::vector<double> lo(d), hi(d);
  for (int k = 0; k < d; ++k) {
    lo[k] = box[k].first;
    hi[k] = box[k].second;
    if (!(hi[k] >= lo[k])) throw std::invalid_argument("integrate_nd: bad box");
    if (hi[k] == lo[k]) return {0.0, 0.0, 0};
  }
  long long evals = 0;
  long long order = 0;
  std::priority_queue<Cell, std::vector<Cell>, CellWorse> heap;
  double total_v, total_e;
  {
    Cell c0 = eval_cell(f, lo, hi, order++, &evals);
    total_v = c0.value;
    total_e = c0.err;
    heap.push(std::move(c0));
  }
  int splits = 0;
  while (total_e > std::max(spec.abs_tol, spec.rel_tol * std::fabs(total_v))) {
    if (splits >= spec.max_subdivisions) {
      throw AccuracyError("integrate_nd: subdivision budget exhausted",
                          {total_v, total_e, evals});
    }
    Cell worst = heap.top();
    heap.pop();
    int axis = 0;
    double wmax = -1.0;
    for (int k = 0; k < d; ++k) {
      double w = worst.hi[k] - worst.lo[k];
      if (w > wmax) {
        wmax = w;
        axis = k;
      }
    }
    double m = 0.5 * (worst.lo[axis] + worst.hi[axis]);
    total_v -= worst.value;
    total_e -= worst.err;
    auto lo1 = worst.lo, hi1 = worst.hi, lo2 = worst.lo, hi2 = worst.hi;
    hi1[axis] = m;
    lo2[axis] = m;
    Cell a = eval_cell(f, lo1, hi1, order++, &evals);
    Cell b = eval_cell(f, lo2, hi2, order++, &evals);
    total_v += a.value + b.value;
    total_e += a.err + b.err;
    heap.push(std::move(a));
    heap.push(std::move(b));
    ++splits;
  }
  return {total_v, total_e, evals};
}

// ---------------------------------------------------------------------------
// Gaussian tangential convolution.

namespace {

// Mass of the d-dimensional Gaussian kernel outside the ball of radius R.
double gaussian_tail_mass(double R, double t, int d) {
  double u = R / (2.0 * std::sqrt(t));
  if (d == 1) return std::erfc(u);
  if (d == 2) return std::exp(-u * u);
  return std::erfc(u) + 2.0 * u * std::exp(-u * u) / std::sqrt(M_PI);  // d == 3
}

}  // namespace

QuadResult convolve_tangential(const Vec& x, double t, const FnNd& density,
                               const QuadSpec& spec,
                               const std::vector<int>& deriv) {
  if (!(t > 0.0)) throw std::domain_error("convolve_tangential: t must be > 0");
  const int d = static_cast<int>(x.size());
  if (d != 2 && d != 3)
    throw std::invalid_argument(
        "convolve_tangential: dimension must be 2 or 3");
  const double sqt = std::sqrt(t);
  const double R = 10.0 * std::max(norm(x), sqt);

  // Integrate in the offset v = x - z, polar around the Gaussian center
  // v = 0. Midpoint rules in the angles are spectrally accurate for the
  // smooth periodic ring integrands here.
  auto ring_average = [&](double r) {
    double acc = 0.0;
    if (d == 2) {
      const int m = 64;
      Vec z(2);
      for (int j = 0; j < m; ++j) {
        double th = (2.0 * M_PI * (j + 0.5)) / m;
        double v[2] = {r * std::cos(th), r * std::sin(th)};
        z[0] = x[0] - v[0];
        z[1] = x[1] - v[1];
        acc += gauss_deriv(v, 2, t, deriv) * density(z);
      }
      return acc * (2.0 * M_PI / m) * r;
    }
    const int mth = 24, mph = 48;
    Vec z(3);
    for (int i = 0; i < mth; ++i) {
      double cth = -1.0 + (2.0 * (i + 0.5)) / mth;
      double sth = std::sqrt(std::max(0.0, 1.0 - cth * cth));
      for (int j = 0; j < mph; ++j) {
        double ph = (2.0 * M_PI * (j + 0.5)) / mph;
        double v[3] = {r * sth * std::cos(ph), r * sth * std::sin(ph), r * cth};
        for (int k = 0; k < 3; ++k) z[k] = x[k] - v[k];
        acc += gauss_deriv(v, 3, t, deriv) * density(z);
      }
    }
    return acc * (2.0 / mth) * (2.0 * M_PI / mph) * r * r;
  };

  // Radial panel edges: dense within a few Gaussian widths, then geometric.
  std::vector<double> edges{0.0};
  for (double c : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
    double e = c * 2.0 * sqt;
    if (e < R) edges.push_back(e);
  }
  double e = edges.back();
  while (e * 2.0 < R) {
    e *= 2.0;
    edges.push_back(e);
  }
  edges.push_back(R);

  QuadResult radial = integrate_1d_panels(ring_average, edges, spec);

  // Certified tail: exact kernel mass outside radius R times a sampled bound
  // on |density| there. Derivative kernels decay strictly faster, so the
  // plain-kernel mass is a valid envelope up to the polynomial factor, which
  // the sampled bound absorbs at these radii.
  double dens_bound = 0.0;
  {
    const int m = 8;
    Vec z(d);
    for (int j = 0; j < m; ++j) {
      double th = (2.0 * M_PI * j) / m;
      z[0] = x[0] - R * std::cos(th);
      z[1] = x[1] - R * std::sin(th);
      if (d == 3) z[2] = x[2];
      dens_bound = std::max(dens_bound, std::fabs(density(z)));
    }
  }
  double tail = dens_bound * gaussian_tail_mass(R, t, d);
  return {radial.value, radial.error_estimate + tail, radial.evaluations};
}

// ---------------------------------------------------------------------------

double counter_uniform(std::uint64_t seed, std::uint64_t ctr) {
  auto mix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  std::uint64_t v = mix(seed ^ mix(ctr));
  return static_cast<double>(v >> 11) * 0x1.0p-53;
}

std::vector<double> parallel_map(std::size_t count, int workers,
                                 const std::function<double(std::size_t)>& f) {
  std::vector<double> out(count);
  if (count == 0) return out;
  unsigned hw = std::thread::hardware_concurrency();
  int w = workers > 0 ? workers : (hw > 0 ? static_cast<int>(hw) : 1);
  w = std::min<int>(w, static_cast<int>(count));
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<void>> futs;
  futs.reserve(w);
  std::size_t chunk = (count + w - 1) / w;
  for (int k = 0; k < w; ++k) {
    std::size_t b = k * chunk;
    std::size_t e2 = std::min(count, b + chunk);
    if (b >= e2) break;
    futs.push_back(std::async(std::launch::async, [&, b, e2]() {
      for (std::size_t i = b; i < e2; ++i) out[i] = f(i);
    }));
  }
  for (auto& fu : futs) fu.get();
  return out;
}

}  // namespace stokeslab
