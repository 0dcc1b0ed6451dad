#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature on finite intervals.
// The interval with the largest |K15 - G7| is bisected until the summed
// estimate meets the tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace qbm::detail {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  int intervals = 0;
  bool converged = false;
};

namespace gk15 {

inline constexpr std::array<double, 8> nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for nodes[1], nodes[3], nodes[5], nodes[7]
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel rule(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(mid);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * nodes[j];
    const double sum = f(mid - dx) + f(mid + dx);
    kronrod += kronrod_weights[j] * sum;
    if (j % 2 == 1) gauss += gauss_weights[j / 2] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace gk15

/// Integrates f over [a, b] split at the given interior breakpoints.
/// Stops when the error estimate is below max(abs_tol, rel_tol * |I|) or
/// max_panels have been used; `converged` reports which.
template <class F>
QuadResult integrate(F&& f, std::vector<double> points, double abs_tol, double rel_tol = 0.0,
                     int max_panels = 4000) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  std::priority_queue<gk15::Panel> heap;
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    auto p = gk15::rule(f, points[i], points[i + 1]);
    total += p.value;
    err += p.err;
    heap.push(p);
  }

  QuadResult r;
  while (true) {
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      r.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_panels) break;
    const auto worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // cannot split further
    heap.pop();
    const auto left = gk15::rule(f, worst.a, mid);
    const auto right = gk15::rule(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  // re-sum so the result does not carry the update rounding
  r.value = 0.0;
  r.abs_err = 0.0;
  r.intervals = static_cast<int>(heap.size());
  std::vector<gk15::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](auto& x, auto& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    r.value += p.value;
    r.abs_err += p.err;
  }
  return r;
}

template <class F>
QuadResult integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 0.0,
                     int max_panels = 4000) {
  return integrate(std::forward<F>(f), std::vector<double>{a, b}, abs_tol, rel_tol, max_panels);
}

}  // namespace qbm::detail
