#include "srwpnet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srwpnet {
namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the shared nodes (QUADPACK qk15 values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

// One G7/K15 evaluation on [a, b] with QUADPACK's rescaled error estimate.
PanelEstimate kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double halfw = 0.5 * (b - a);

  double fv[15];
  const double fc = f(center);
  fv[14] = fc;
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = halfw * kXgk[i];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    resk += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }

  const double mean = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kWgk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  resasc *= std::abs(halfw);

  double err = std::abs(resk - resg) * std::abs(halfw);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  return {resk * halfw, err};
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a <= b)) throw std::domain_error("integrate_adaptive: requires a <= b");
  if (a == b) return {0.0, 0.0, 0};

  std::vector<Panel> heap;
  heap.reserve(64);
  PanelEstimate first = kronrod15(f, a, b);
  heap.push_back({a, b, first.value, first.error});

  double total_value = first.value;
  double total_error = first.error;
  int panels = 1;

  while (total_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
    if (panels >= spec.max_subdivisions) {
      throw QuadratureError(
          "integrate_adaptive: no convergence after " + std::to_string(panels) +
              " subdivisions (error estimate " + std::to_string(total_error) + ")",
          total_value, total_error);
    }
    std::pop_heap(heap.begin(), heap.end());
    Panel worst = heap.back();
    heap.pop_back();

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at floating-point resolution; accept its estimate as is.
      heap.push_back({worst.a, worst.b, worst.value, 0.0});
      std::push_heap(heap.begin(), heap.end());
      total_error -= worst.error;
      continue;
    }
    PanelEstimate left = kronrod15(f, worst.a, mid);
    PanelEstimate right = kronrod15(f, mid, worst.b);

    total_value += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    ++panels;

    heap.push_back({worst.a, mid, left.value, left.error});
    std::push_heap(heap.begin(), heap.end());
    heap.push_back({mid, worst.b, right.value, right.error});
    std::push_heap(heap.begin(), heap.end());
  }

  return {total_value, total_error, panels};
}

QuadResult integrate_singular(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  if (!(a <= b)) throw std::domain_error("integrate_singular: requires a <= b");
  if (a == b) return {0.0, 0.0, 0};
  const double width = b - a;
  // x = a + (b-a) sin^2(theta); dx = (b-a) sin(2 theta) dtheta. The Jacobian
  // vanishes linearly at both ends, neutralizing inverse-square-root
  // singularities of f. Kronrod nodes never touch the interval endpoints, so
  // f is only evaluated strictly inside (a, b).
  auto g = [&](double theta) {
    const double st = std::sin(theta);
    const double x = a + width * st * st;
    // Deep refinement can round x onto an endpoint the caller's integrand is
    // singular at; the Jacobian there is below resolution anyway.
    if (x <= a || x >= b) return 0.0;
    return f(x) * width * std::sin(2.0 * theta);
  };
  return integrate_adaptive(g, 0.0, 0.5 * M_PI, spec);
}

QuadResult integrate_semi_infinite(const Integrand& f, double a, const QuadratureSpec& spec,
                                   double scale_hint) {
  spec.validate();
  if (!(scale_hint > 0.0)) throw std::domain_error("integrate_semi_infinite: scale_hint must be > 0");

  constexpr int kMaxSegments = 64;
  constexpr int kMinSegments = 4;

  double total = 0.0;
  double total_error = 0.0;
  int panels = 0;

  double lo = a;
  double width = scale_hint;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kMaxSegments; ++k) {
    const double hi = lo + width;
    QuadResult seg = integrate_adaptive(f, lo, hi, spec);
    total += seg.value;
    total_error += seg.error_estimate;
    panels += seg.panels;

    const double mag = std::abs(seg.value);
    if (k + 1 >= kMinSegments && mag <= prev_mag) {
      // Geometric tail bound: remaining ~ mag * r / (1 - r) with the observed
      // per-segment decay ratio r.
      double ratio = prev_mag > 0.0 ? std::min(mag / prev_mag, 0.9) : 0.0;
      if (!std::isfinite(ratio)) ratio = 0.9;
      const double remaining = mag * ratio / (1.0 - ratio);
      if (remaining <= std::max(spec.tail_epsilon * std::abs(total), spec.abs_tol))
        return {total, total_error + remaining, panels};
    }
    prev_mag = mag;
    lo = hi;
    width *= 2.0;
  }
  throw QuadratureError(
      "integrate_semi_infinite: tail bound not met within the maximum truncation range",
      total, total_error);
}

double integrate_piecewise_singular(const Integrand& f, double a, double b,
                                    std::span<const double> breakpoints,
                                    const QuadratureSpec& spec) {
  if (!(a <= b)) throw std::domain_error("integrate_piecewise_singular: requires a <= b");
  std::vector<double> cuts;
  cuts.reserve(breakpoints.size() + 2);
  cuts.push_back(a);
  for (double bp : breakpoints)
    if (bp > a && bp < b) cuts.push_back(bp);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 0.0) continue;
    total += integrate_singular(f, cuts[i], cuts[i + 1], spec).value;
  }
  return total;
}

}  // namespace srwpnet
