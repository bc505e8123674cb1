// Test-only oracles. Everything here is deliberately independent of the
// implementation paths it checks: plain finite differences, O(n^2) scans,
// Monte Carlo estimates, and small dense solves.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <ecmo/pareto.hpp>
#include <ecmo/rng.hpp>
#include <ecmo/types.hpp>

namespace oracle {

using ecmo::Matrix;
using ecmo::Vector;

inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& z,
                          double step = 1e-5) {
  Vector g(z.size());
  for (int i = 0; i < z.size(); ++i) {
    Vector zp = z, zm = z;
    zp[i] += step;
    zm[i] -= step;
    g[i] = (f(zp) - f(zm)) / (2.0 * step);
  }
  return g;
}

inline bool close_rel(double a, double b, double rel = 1e-6, double abs_floor = 1e-8) {
  const double err = std::abs(a - b);
  if (err <= abs_floor) return true;
  return err <= rel * std::max(std::abs(a), std::abs(b));
}

// Pairwise brute-force dominance filter with the same tie rule as the
// production filter: drop anything dominated by another point or equal to
// an earlier point.
inline std::vector<int> brute_force_filter(const std::vector<Vector>& points) {
  std::vector<int> kept;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    bool drop = false;
    for (int j = 0; j < n && !drop; ++j) {
      if (j == i) continue;
      bool leq = true, strict = false;
      for (int s = 0; s < points[i].size(); ++s) {
        if (points[j][s] > points[i][s]) leq = false;
        if (points[j][s] < points[i][s]) strict = true;
      }
      if (leq && strict) drop = true;           // j dominates i
      if (j < i && leq && !strict) drop = true;  // exact duplicate, earlier wins
    }
    if (!drop) kept.push_back(i);
  }
  return kept;
}

inline double mc_hypervolume(const std::vector<Vector>& points, const Vector& ref,
                             long long samples, std::uint64_t seed) {
  const int S = static_cast<int>(ref.size());
  Vector lo = ref;
  for (const Vector& p : points) lo = lo.cwiseMin(p);
  double box = 1.0;
  for (int s = 0; s < S; ++s) box *= ref[s] - lo[s];
  ecmo::RandomStream rng(seed, 0x4d43ULL);
  long long hits = 0;
  Vector x(S);
  for (long long n = 0; n < samples; ++n) {
    for (int s = 0; s < S; ++s)
      x[s] = lo[s] + rng.uniform(ecmo::RandomStream::key(n, s)) * (ref[s] - lo[s]);
    for (const Vector& p : points) {
      bool dominated = true;
      for (int s = 0; s < S; ++s)
        if (x[s] < p[s]) {
          dominated = false;
          break;
        }
      if (dominated) {
        ++hits;
        break;
      }
    }
  }
  return box * static_cast<double>(hits) / static_cast<double>(samples);
}

inline double brute_epsilon(const std::vector<Vector>& front, const std::vector<Vector>& ref) {
  double eps = 0.0;
  for (const Vector& r : ref) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& p : front) {
      double worst = -std::numeric_limits<double>::infinity();
      for (int s = 0; s < r.size(); ++s) worst = std::max(worst, p[s] - r[s]);
      best = std::min(best, worst);
    }
    eps = std::max(eps, best);
  }
  return std::max(eps, 0.0);
}

inline double golden_section(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12) {
  const double phi = 0.6180339887498949;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// WC optimum of quad_affine for equal weights, via a dense parameter grid
// plus golden-section refinement along the constraint line, and the duals
// from the active-set stationarity system.
struct QuadAffineWcOracle {
  Vector z;      // optimum
  double rho;    // max_s lambda_s f_s at the optimum
  Vector omega;  // (omega_1, omega_2)
  double nu;
};

inline QuadAffineWcOracle quad_affine_wc_equal_weights() {
  auto f1 = [](double t, double s) { return t * t + 4.0 * s * s; };
  auto f2 = [](double t, double s) { return 4.0 * (t - 2.0) * (t - 2.0) + (s - 2.0) * (s - 2.0); };
  auto phi = [&](double t) {
    const double s = 0.5 * t - 0.1;
    return std::max(0.5 * f1(t, s), 0.5 * f2(t, s));
  };
  // coarse grid to bracket, then refine
  double best_t = -5.0, best = phi(-5.0);
  for (int i = 0; i <= 10000; ++i) {
    const double t = -5.0 + 10.0 * i / 10000.0;
    if (phi(t) < best) {
      best = phi(t);
      best_t = t;
    }
  }
  const double t = golden_section(phi, best_t - 0.01, best_t + 0.01);
  QuadAffineWcOracle out;
  out.z = Vector(2);
  out.z << t, 0.5 * t - 0.1;
  out.rho = phi(t);
  // stationarity: omega1 l1 grad f1 + omega2 l2 grad f2 + nu grad h = 0,
  // omega1 + omega2 = 1, with l = (1/2, 1/2).
  Vector g1(2), g2(2), gh(2);
  g1 << 2.0 * out.z[0], 8.0 * out.z[1];
  g2 << 8.0 * (out.z[0] - 2.0), 2.0 * (out.z[1] - 2.0);
  gh << 0.5, -1.0;
  Matrix A(3, 3);
  Vector b(3);
  A << 0.5 * g1[0], 0.5 * g2[0], gh[0],
       0.5 * g1[1], 0.5 * g2[1], gh[1],
       1.0, 1.0, 0.0;
  b << 0.0, 0.0, 1.0;
  const Vector x = A.fullPivLu().solve(b);
  out.omega = Vector(2);
  out.omega << x[0], x[1];
  out.nu = x[2];
  return out;
}

// Global minimizer of sum_s lambda_s f_s(z) s.t. Az = b for quadratic
// objectives, from the (k+q) x (k+q) linear KKT system.
inline Vector ls_quadratic_optimum(const Matrix& H, const Vector& g0, const Matrix& A,
                                   const Vector& b) {
  const int k = static_cast<int>(H.rows());
  const int q = static_cast<int>(A.rows());
  Matrix K = Matrix::Zero(k + q, k + q);
  K.topLeftCorner(k, k) = H;
  K.topRightCorner(k, q) = A.transpose();
  K.bottomLeftCorner(q, k) = A;
  Vector rhs(k + q);
  rhs << -g0, b;
  const Vector sol = K.fullPivLu().solve(rhs);
  return sol.head(k);
}

}  // namespace oracle
