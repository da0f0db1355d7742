#pragma once

// Independent numerical references used by the tests: composite Simpson
// integration, central differences, and a bisection root finder. Nothing here
// shares code with the library.

#include <cmath>
#include <algorithm>
#include <functional>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals = 20000) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_derivative(const std::function<double(double)>& f, double x, double h = 1e-4) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double bisect(const std::function<double(double)>& f, double a, double b, int iterations = 200) {
  double fa = f(a);
  for (int i = 0; i < iterations; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Physicists' Hermite polynomial from the unnormalized recurrence.
inline double hermite(int n, double x) {
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

inline double hermite_function(int n, double x) {
  return hermite(n, x) * std::exp(-0.5 * x * x) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(kPi));
}

// Eigenvalues of a dense symmetric matrix by Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i][i];
  std::sort(d.begin(), d.end());
  return d;
}

// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Roots of det(H - E S) on [lo, hi] by a uniform sign scan refined with bisection.
inline std::vector<double> pencil_roots(const std::vector<std::vector<double>>& h,
                                        const std::vector<std::vector<double>>& s, double lo, double hi,
                                        int steps = 200000) {
  auto f = [&](double e) {
    auto m = h;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) m[i][j] -= e * s[i][j];
    return determinant(m);
  };
  std::vector<double> roots;
  double x0 = lo;
  double f0 = f(x0);
  for (int i = 1; i <= steps; ++i) {
    const double x1 = lo + (hi - lo) * i / steps;
    const double f1 = f(x1);
    if (f1 == 0.0 || (f0 < 0) != (f1 < 0)) roots.push_back(bisect(f, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace oracle
