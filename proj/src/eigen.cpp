#include "hobox/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hobox/error.hpp"

namespace hobox {

namespace {

void validate_symmetric(const Matrix& a) {
  if (!a.square()) fail(ErrorCode::InvalidArgument, "sym_eigen: matrix not square");
  for (double v : a.data())
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "sym_eigen: non-finite entry");
  if (symmetry_defect(a) > 1e-8) fail(ErrorCode::InvalidArgument, "sym_eigen: matrix is not symmetric");
}

// Row-major square matrix over the working precision of the solver.
template <class T>
struct Square {
  explicit Square(std::size_t order = 0) : n(order), a(order * order, T(0)) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  T operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  std::size_t rows() const { return n; }
  std::size_t n;
  std::vector<T> a;
};

template <class T>
struct Decomposition {
  std::vector<T> values;
  Square<T> vectors;
};

// Householder reduction to tridiagonal form. On return d holds the diagonal,
// e the subdiagonal (e[0] = 0) and v the accumulated transformation.
template <class T>
void tridiagonalize(Square<T>& v, std::vector<T>& d, std::vector<T>& e) {
  const std::size_t n = v.rows();
  for (std::size_t j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    T scale = T(0);
    T h = T(0);
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == T(0)) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = T(0);
        v(j, i) = T(0);
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      T f = d[i - 1];
      T g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = T(0);

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = T(0);
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const T hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = T(0);
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = T(1);
    const T h = d[i + 1];
    if (h != T(0)) {
      for (std::size_t k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (std::size_t j = 0; j <= i; ++j) {
        T g = T(0);
        for (std::size_t k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (std::size_t k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (std::size_t k = 0; k <= i; ++k) v(k, i + 1) = T(0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = T(0);
  }
  v(n - 1, n - 1) = T(1);
  e[0] = T(0);
}

// Implicit QL on the tridiagonal (d, e); rotations are applied to v when
// with_vectors is set.
template <class T>
void ql_implicit(std::vector<T>& d, std::vector<T>& e, Square<T>& v, bool with_vectors) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = T(0);

  T f = T(0);
  T tst1 = T(0);
  const T eps = std::numeric_limits<T>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 100) fail(ErrorCode::Numerical, "sym_eigen: QL iteration did not converge");
        T g = d[l];
        T p = (d[l + 1] - g) / (T(2) * e[l]);
        T r = std::hypot(p, T(1));
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const T dl1 = d[l + 1];
        T h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        T c = T(1);
        T c2 = c;
        T c3 = c;
        const T el1 = e[l + 1];
        T s = T(0);
        T s2 = T(0);
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          if (with_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              h = v(k, ii + 1);
              v(k, ii + 1) = s * v(k, ii) + c * h;
              v(k, ii) = c * v(k, ii) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = T(0);
  }
}

template <class T>
Decomposition<T> decompose(Square<T> v, bool with_vectors) {
  const std::size_t n = v.rows();
  Decomposition<T> out;
  if (n == 0) return out;
  std::vector<T> d(n);
  std::vector<T> e(n);
  tridiagonalize(v, d, e);
  ql_implicit(d, e, v, with_vectors);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (!with_vectors) return out;

  out.vectors = Square<T>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    std::size_t pivot = 0;
    T best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      const T m = std::abs(v(i, src));
      if (m > best * T(1 + 1e-12)) {
        best = m;
        pivot = i;
      }
    }
    const T sign = v(pivot, src) < 0 ? T(-1) : T(1);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

// Symmetrized copy of a validated matrix in working precision T.
template <class T>
Square<T> symmetric_copy(const Matrix& a) {
  validate_symmetric(a);
  const std::size_t n = a.rows();
  Square<T> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = a(i, i);
    for (std::size_t j = i + 1; j < n; ++j) v(i, j) = v(j, i) = (T(a(i, j)) + T(a(j, i))) / 2;
  }
  return v;
}

EigenDecomposition to_double(const Decomposition<double>& d) {
  EigenDecomposition out;
  out.values = d.values;
  const std::size_t n = d.vectors.rows();
  out.vectors = Matrix(n, n);
  std::copy(d.vectors.a.begin(), d.vectors.a.end(), out.vectors.data().begin());
  return out;
}

}  // namespace

EigenDecomposition sym_eigen(const Matrix& a) { return to_double(decompose(symmetric_copy<double>(a), true)); }

std::vector<double> sym_eigenvalues(const Matrix& a) { return decompose(symmetric_copy<double>(a), false).values; }

Spectrum gevp(const ObliqueSystem& system, double trunc_tol) {
  const Matrix& h = system.hamiltonian;
  const Matrix& s = system.overlap;
  const std::size_t n = s.rows();
  if (n == 0 || h.rows() != n || !h.square() || !s.square())
    fail(ErrorCode::InvalidArgument, "gevp: H and Theta must be square and of equal size");
  if (!(trunc_tol >= 0.0) || !std::isfinite(trunc_tol)) fail(ErrorCode::InvalidArgument, "gevp: bad trunc_tol");

  const EigenDecomposition metric = sym_eigen(s);
  const double smax = metric.values.back();
  if (!(smax > 0.0)) fail(ErrorCode::DegenerateBasis, "gevp: overlap matrix has no positive mode");
  if (metric.values.front() < -1e-8 * smax)
    fail(ErrorCode::Numerical, "gevp: overlap matrix is not positive semidefinite");

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (metric.values[i] >= trunc_tol * smax && metric.values[i] > 0.0) kept.push_back(i);
  if (kept.empty()) fail(ErrorCode::DegenerateBasis, "gevp: every overlap mode was truncated");
  const std::size_t r = kept.size();

  Matrix x(n, r);
  for (std::size_t c = 0; c < r; ++c) {
    const double inv = 1.0 / std::sqrt(metric.values[kept[c]]);
    for (std::size_t i = 0; i < n; ++i) x(i, c) = metric.vectors(i, kept[c]) * inv;
  }
  Matrix hw = x.transpose() * (h * x);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) hw(i, j) = hw(j, i) = 0.5 * (hw(i, j) + hw(j, i));
  const EigenDecomposition reduced = sym_eigen(hw);

  Spectrum out;
  out.energies = reduced.values;
  out.vectors = x * reduced.vectors;
  out.effective_dim = r;
  out.truncation_tol = trunc_tol;
  out.labels = system.labels;
  out.basis = system.basis;
  out.converged_count = r;
  out.residuals.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const auto v = out.vectors.column(k);
    const auto hv = h * v;
    const auto sv = s * v;
    std::vector<double> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = hv[i] - out.energies[k] * sv[i];
    const double scale = std::max(norm2(hv), std::numeric_limits<double>::min());
    out.residuals[k] = norm2(res) / scale;
  }
  return out;
}

}  // namespace hobox
