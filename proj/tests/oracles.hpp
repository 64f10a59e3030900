// Test-only oracles, independent of the library's computation paths:
// adaptive Gauss-Kronrod quadrature for overlap integrals, a dense scan of
// the 3-level constrained family for entropy maximality, and a plain
// least-squares slope.

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracles {

// Gauss-Kronrod 7-15 rule on [a, b]; returns the K15 estimate and an error
// estimate from the G7/K15 difference.
template <typename Func>
double gk15(const Func& f, double a, double b, double& err) {
  // Abscissae (positive half), K15 weights, G7 weights (0 where unused).
  static const double nodes[8] = {
      0.000000000000000, 0.207784955007898, 0.405845151377397,
      0.586087235467691, 0.741531185599394, 0.864864423359769,
      0.949107912342759, 0.991455371120813};
  static const double wk[8] = {
      0.209482141084728, 0.204432940075298, 0.190350578064785,
      0.169004726639267, 0.140653259715525, 0.104790010322250,
      0.063092092629979, 0.022935322010529};
  static const double wg[8] = {
      0.417959183673469, 0.0, 0.381830050505119, 0.0,
      0.279705391489277, 0.0, 0.129484966168870, 0.0};

  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double k15 = wk[0] * f0;
  double g7 = wg[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * nodes[i];
    const double fi = f(mid + dx) + f(mid - dx);
    k15 += wk[i] * fi;
    g7 += wg[i] * fi;
  }
  k15 *= half;
  g7 *= half;
  err = std::abs(k15 - g7);
  return k15;
}

// Adaptive bisection of gk15 panels until the summed error estimate is
// below tol.
template <typename Func>
double integrate(const Func& f, double a, double b, double tol = 1e-12) {
  struct Panel {
    double a, b;
  };
  std::vector<Panel> work{{a, b}};
  double total = 0.0;
  int panels = 0;
  while (!work.empty()) {
    if (++panels > 100000) {
      throw std::runtime_error("quadrature did not converge");
    }
    const Panel p = work.back();
    work.pop_back();
    double err = 0.0;
    const double s = gk15(f, p.a, p.b, err);
    if (err < tol * std::max(1.0, std::abs(s)) || (p.b - p.a) < 1e-14) {
      total += s;
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    work.push_back({p.a, mid});
    work.push_back({mid, p.b});
  }
  return total;
}

// Defining integral of the cross-width overlap, evaluated numerically.
inline double overlap_quadrature(int level, int target_level, double big,
                                 double small) {
  const double pi = 3.14159265358979323846;
  auto f = [&](double x) {
    return std::sqrt(2.0 / small) * std::sin(target_level * pi * x / small) *
           std::sqrt(2.0 / big) * std::sin(level * pi * x / big);
  };
  // One panel per half-oscillation keeps the adaptive pass cheap.
  const int pieces = 2 * (level + target_level) + 2;
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = small * i / pieces;
    const double b = small * (i + 1) / pieces;
    sum += integrate(f, a, b, 1e-13);
  }
  return sum;
}

// Dense scan of the 3-level family with sum p = 1 and sum p n^2 = target:
// one free parameter p3 in [max(0, (t-4)/5), min(1, (t-1)/8)]. Returns the
// maximum Shannon entropy found.
inline double scan3_max_entropy(double target, int points) {
  const double lo = std::max(0.0, (target - 4.0) / 5.0);
  const double hi = std::min(1.0, (target - 1.0) / 8.0);
  if (hi < lo) throw std::invalid_argument("target outside the 3-level range");
  double best = -1.0;
  for (int i = 0; i < points; ++i) {
    const double p3 = lo + (hi - lo) * i / (points - 1);
    const double p2 = (target - 1.0 - 8.0 * p3) / 3.0;
    const double p1 = 1.0 - p2 - p3;
    if (p1 < 0.0 || p2 < 0.0) continue;
    double s = 0.0;
    for (double p : {p1, p2, p3}) {
      if (p > 0.0) s -= p * std::log(p);
    }
    best = std::max(best, s);
  }
  return best;
}

// Plain least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles
