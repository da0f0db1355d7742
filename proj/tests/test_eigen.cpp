#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hobox/analysis.hpp"
#include "hobox/assembly.hpp"
#include "hobox/eigen.hpp"
#include "hobox/error.hpp"
#include "oracles.hpp"

using namespace hobox;
using oracle::kPi;

namespace {

Matrix random_symmetric(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

Matrix random_spd(std::size_t n, unsigned seed) {
  const Matrix b = random_symmetric(n, seed);
  Matrix s = b.transpose() * b;
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.5;
  return s;
}

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

ObliqueSystem system_of(const Matrix& h, const Matrix& s) {
  ObliqueSystem sys;
  sys.hamiltonian = h;
  sys.overlap = s;
  for (std::size_t i = 0; i < h.rows(); ++i) sys.labels.push_back("v:" + std::to_string(i));
  return sys;
}

const Params kP4 = make_params(1, 1, 4, kPi / 2);

}  // namespace

TEST_CASE("sym_eigen on trivial matrices") {
  const auto id = sym_eigen(Matrix::identity(5));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));

  Matrix d(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto e = sym_eigen(d);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(3.0));
  CHECK(e.vectors(1, 0) == doctest::Approx(1.0));
  CHECK(e.vectors(2, 1) == doctest::Approx(1.0));
  CHECK(e.vectors(0, 2) == doctest::Approx(1.0));

  const auto one = sym_eigen(Matrix(1, 1, -4.0));
  CHECK(one.values[0] == -4.0);
  CHECK(one.vectors(0, 0) == 1.0);
}

TEST_CASE("sym_eigen residuals, orthonormality and agreement with Jacobi") {
  for (std::size_t n : {2u, 8u, 31u, 100u}) {
    const Matrix a = random_symmetric(n, 17u + static_cast<unsigned>(n));
    const auto e = sym_eigen(a);
    const double scale = a.max_abs() * n;
    const auto ref = oracle::jacobi_eigenvalues(rows_of(a));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(e.values[k] == doctest::Approx(ref[k]).epsilon(1e-12).scale(1.0));
      if (k) CHECK(e.values[k] >= e.values[k - 1]);
      const auto v = e.vectors.column(k);
      auto av = a * v;
      for (std::size_t i = 0; i < n; ++i) av[i] -= e.values[k] * v[i];
      CHECK(norm2(av) < 1e-10 * scale);
      for (std::size_t l = 0; l < n; ++l)
        CHECK(dot(v, e.vectors.column(l)) == doctest::Approx(k == l ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
      // Largest component is positive.
      std::size_t arg = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
      CHECK(v[arg] > 0.0);
    }
    const auto vals = sym_eigenvalues(a);
    for (std::size_t k = 0; k < n; ++k) CHECK(vals[k] == doctest::Approx(e.values[k]).epsilon(1e-13).scale(1.0));
  }
}

TEST_CASE("sym_eigen handles repeated eigenvalues") {
  Matrix a(4, 4);
  a(0, 0) = a(1, 1) = a(2, 2) = 2.0;
  a(3, 3) = -1.0;
  a(0, 1) = a(1, 0) = 0.0;
  const auto e = sym_eigen(a);
  CHECK(e.values[0] == doctest::Approx(-1.0));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = 0; l < 4; ++l)
      CHECK(dot(e.vectors.column(k), e.vectors.column(l)) == doctest::Approx(k == l ? 1.0 : 0.0).scale(1.0));
}

TEST_CASE("sym_eigen rejects bad input") {
  Matrix a = random_symmetric(4, 3);
  a(0, 1) += 1e-3;
  CHECK_THROWS_AS(sym_eigen(a), Error);
  CHECK_THROWS_AS(sym_eigen(Matrix(2, 3)), Error);
  Matrix b = Matrix::identity(3);
  b(1, 1) = std::nan("");
  CHECK_THROWS_AS(sym_eigen(b), Error);
  // Asymmetry below the tolerance is accepted.
  Matrix c = random_symmetric(4, 5);
  c(0, 1) += 1e-12;
  CHECK_NOTHROW(sym_eigen(c));
}

TEST_CASE("gevp with identity metric reduces to sym_eigen") {
  const Matrix h = random_symmetric(6, 11);
  const Spectrum s = gevp(system_of(h, Matrix::identity(6)));
  const auto e = sym_eigen(h);
  CHECK(s.effective_dim == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(s.energies[k] == doctest::Approx(e.values[k]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("gevp matches the determinant scan on random SPD pairs") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    const Matrix h = random_symmetric(5, 100 + seed);
    const Matrix s = random_spd(5, 200 + seed);
    const Spectrum sp = gevp(system_of(h, s));
    REQUIRE(sp.size() == 5);
    const double bound = 1.1 * std::max(std::abs(sp.energies.front()), std::abs(sp.energies.back())) + 1.0;
    const auto roots = oracle::pencil_roots(rows_of(h), rows_of(s), -bound, bound);
    REQUIRE(roots.size() == 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(sp.energies[k] == doctest::Approx(roots[k]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("gevp drops a duplicated basis vector") {
  // Four vectors in R^3 where the last duplicates the second.
  const Matrix a = random_symmetric(3, 7);
  Matrix b(3, 4);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) b(i, j) = u(rng);
    b(i, 3) = b(i, 1);
  }
  const Matrix h = b.transpose() * (a * b);
  const Matrix s = b.transpose() * b;
  const Spectrum dup = gevp(system_of(h, s), 1e-10);
  CHECK(dup.effective_dim == 3);
  const Matrix b3 = [&] {
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = b(i, j);
    return m;
  }();
  const Spectrum ref = gevp(system_of(b3.transpose() * (a * b3), b3.transpose() * b3), 1e-10);
  for (std::size_t k = 0; k < 3; ++k) CHECK(dup.energies[k] == doctest::Approx(ref.energies[k]).epsilon(1e-10).scale(1.0));
}

TEST_CASE("gevp failure modes") {
  CHECK_THROWS_AS(gevp(system_of(Matrix::identity(3), Matrix(3, 3))), Error);
  Matrix indefinite = Matrix::identity(2);
  indefinite(1, 1) = -1.0;
  try {
    gevp(system_of(Matrix::identity(2), indefinite));
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Numerical);
  }
  CHECK_THROWS_AS(gevp(system_of(Matrix::identity(2), Matrix::identity(3))), Error);
  CHECK_THROWS_AS(gevp(system_of(Matrix::identity(2), Matrix::identity(2)), -1.0), Error);
}

TEST_CASE("oblique spectrum invariants") {
  const BasisSet basis = concat(box_basis(kP4, 7), mho_basis(kP4, 7, MhoStrategy::Nodal));
  const ObliqueSystem sys = assemble(kP4, basis);
  const Spectrum sp = gevp(sys);
  CHECK(sp.size() == sp.effective_dim);
  CHECK(sp.basis_dim() == 14);
  CHECK(sp.labels == sys.labels);
  for (std::size_t k = 0; k < sp.size(); ++k) {
    // The top pairs are near-dependent combinations; see the lowest levels below.
    if (k < 8) CHECK(sp.residuals[k] <= 1e-8);
    CHECK(sp.residuals[k] <= 1e-6);
    if (k) CHECK(sp.energies[k] >= sp.energies[k - 1]);
    const auto vk = sp.state(k);
    const auto sv = sys.overlap * vk;
    for (std::size_t l = 0; l < sp.size(); ++l) {
      // Rounding floor of evaluating v_l^T S v_k with large coefficients.
      const auto vl = sp.state(l);
      const double floor = 1e-15 * sp.basis_dim() * norm2(vk) * norm2(vl) * sys.overlap.max_abs();
      CHECK(std::abs(dot(vl, sv) - (k == l ? 1.0 : 0.0)) <= 1e-8 + floor);
    }
  }
  const Spectrum ref = reference_spectrum(kP4);
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(std::abs(sp.energies[k] - ref.energies[k]) <= 1e-3 * ref.energies[k]);
    CHECK(sp.energies[k] >= ref.energies[k] * (1.0 - 1e-8));
  }
}

TEST_CASE("gevp is invariant under basis permutation") {
  const BasisSet box = box_basis(kP4, 6);
  const BasisSet mho = mho_basis(kP4, 5, MhoStrategy::BoundaryAdjusted);
  const ObliqueSystem sys = assemble(kP4, concat(box, mho));
  const Spectrum a = gevp(sys);
  const Spectrum b = gevp(assemble(kP4, concat(mho, box)));
  REQUIRE(a.size() == b.size());
  // Reordering only changes rounding, which the overlap conditioning amplifies.
  const auto theta = sym_eigenvalues(sys.overlap);
  const double tol = 1e-15 * theta.back() / theta.front();
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a.energies[k] - b.energies[k]) <= tol * a.energies[k]);
  for (std::size_t k = 0; k < 6; ++k) CHECK(a.energies[k] == doctest::Approx(b.energies[k]).epsilon(1e-12));
}

TEST_CASE("nested box bases give monotone eigenvalues") {
  const auto e10 = sym_eigenvalues(box_hamiltonian(kP4, 10));
  const auto e20 = sym_eigenvalues(box_hamiltonian(kP4, 20));
  const auto e40 = sym_eigenvalues(box_hamiltonian(kP4, 40));
  for (std::size_t n = 0; n < 10; ++n) CHECK(e20[n] <= e10[n] + 1e-12 * e10[n]);
  for (std::size_t n = 0; n < 20; ++n) CHECK(e40[n] <= e20[n] + 1e-12 * e20[n]);
}
