#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hobox/assembly.hpp"
#include "hobox/error.hpp"
#include "oracles.hpp"

using namespace hobox;
using oracle::kPi;

namespace {

const Params kP4 = make_params(1, 1, 4, kPi / 2);

double simpson_overlap(const BasisFunction& f, const BasisFunction& g) {
  const double L = f.params().half_width();
  return oracle::simpson([&](double q) { return f.value(q) * g.value(q); }, -L, L, 40000);
}

double simpson_energy(const Params& p, const BasisFunction& f, const BasisFunction& g) {
  const double L = p.half_width();
  const double kin = p.hbar() * p.hbar() / (2.0 * p.mass());
  const double spring = 0.5 * p.mass() * p.omega() * p.omega();
  return oracle::simpson(
      [&](double q) { return kin * f.derivative(q) * g.derivative(q) + spring * q * q * f.value(q) * g.value(q); }, -L,
      L, 40000);
}

std::vector<std::vector<double>> rows_of(const Matrix& m) {
  std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

}  // namespace

TEST_CASE("pure box basis") {
  const BasisSet box = box_basis(kP4, 10);
  const Matrix s = overlap_matrix(box);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(s(i, j) == (i == j ? 1.0 : 0.0));

  const Params free_box = make_params(1, 1, 0, kPi / 2);
  const Matrix h0 = hamiltonian_matrix(free_box, box_basis(free_box, 10));
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      CHECK(h0(i, j) == doctest::Approx(i == j ? box_energy(free_box, static_cast<int>(i)) : 0.0).epsilon(1e-10).scale(1e-10));

  const Matrix h = hamiltonian_matrix(kP4, box);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      CHECK(h(i, j) == doctest::Approx(simpson_energy(kP4, box[i], box[j])).epsilon(1e-10).scale(1.0));
  const Matrix closed = box_hamiltonian(kP4, 10);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) CHECK(h(i, j) == doctest::Approx(closed(i, j)).epsilon(1e-10).scale(1e-10));
}

TEST_CASE("oblique box + nodal system matches direct integration") {
  const BasisSet basis = concat(box_basis(kP4, 7), mho_basis(kP4, 7, MhoStrategy::Nodal));
  const ObliqueSystem sys = assemble(kP4, basis);
  REQUIRE(sys.dim() == 14);
  CHECK(sys.box_block.begin == 0);
  CHECK(sys.box_block.end == 7);
  CHECK(sys.mho_block.begin == 7);
  CHECK(sys.mho_block.end == 14);
  CHECK(sys.labels[7] == "mho:2");
  CHECK(sys.hamiltonian_defect <= 1e-10);
  CHECK(sys.overlap_defect <= 1e-10);
  for (std::size_t i = 0; i < 14; ++i) {
    CHECK(sys.overlap(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t j = 0; j < 14; ++j) {
      CHECK(sys.overlap(i, j) == sys.overlap(j, i));
      CHECK(sys.hamiltonian(i, j) == sys.hamiltonian(j, i));
      CHECK(sys.overlap(i, j) == doctest::Approx(simpson_overlap(basis[i], basis[j])).epsilon(1e-9).scale(1.0));
      CHECK(sys.hamiltonian(i, j) ==
            doctest::Approx(simpson_energy(kP4, basis[i], basis[j])).epsilon(1e-8).scale(1.0));
      if (basis[i].parity() != basis[j].parity()) {
        CHECK(sys.overlap(i, j) == 0.0);
        CHECK(sys.hamiltonian(i, j) == 0.0);
      }
    }
  }
  const auto ev = oracle::jacobi_eigenvalues(rows_of(sys.overlap));
  CHECK(ev.front() >= -1e-10 * ev.back());
}

TEST_CASE("sub-blocks are reproduced bitwise") {
  const BasisSet box = box_basis(kP4, 5);
  const BasisSet mho = mho_basis(kP4, 4, MhoStrategy::BoundaryAdjusted);
  const ObliqueSystem a = assemble(kP4, box);
  const ObliqueSystem b = assemble(kP4, mho);
  const ObliqueSystem u = assemble(kP4, concat(box, mho));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(u.hamiltonian(i, j) == a.hamiltonian(i, j));
      CHECK(u.overlap(i, j) == a.overlap(i, j));
    }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(u.hamiltonian(5 + i, 5 + j) == b.hamiltonian(i, j));
      CHECK(u.overlap(5 + i, 5 + j) == b.overlap(i, j));
    }
}

TEST_CASE("well-confined oscillator functions have near-oscillator diagonal energies") {
  const Params p16 = make_params(1, 1, 16, kPi / 2);
  const BasisSet set = mho_basis(p16, 6, MhoStrategy::BoundaryAdjusted);
  const Matrix h = hamiltonian_matrix(p16, set);
  for (int n = 0; n < 6; ++n) CHECK(h(n, n) == doctest::Approx(ho_energy(p16, n)).epsilon(1e-3));
}

TEST_CASE("non-conforming functions need the override") {
  const BasisSet pw = mho_basis(kP4, 3, MhoStrategy::PotentialWidth);
  try {
    overlap_matrix(pw);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConforming);
    CHECK(std::string(e.what()).find("mho:0") != std::string::npos);
  }
  CHECK_THROWS_AS(assemble(kP4, raw_oscillator_basis(kP4, 2)), Error);
  AssemblyOptions opts;
  opts.allow_nonconforming = true;
  const ObliqueSystem sys = assemble(kP4, pw, opts);
  CHECK(sys.dim() == 3);
  CHECK(sys.overlap(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("momentum boundary defect") {
  const BasisSet box = box_basis(kP4, 4);
  for (const auto& f : box)
    for (const auto& g : box) CHECK(momentum_boundary_defect(f, g, kP4) <= 1e-12);

  const Params p1 = make_params(1, 1, 1, 1);
  const BasisFunction psi0 = BasisFunction::raw_oscillator(p1, 0);
  const BasisFunction psi1 = BasisFunction::raw_oscillator(p1, 1);
  const double expected = 2.0 * ho_wavefunction(p1, 0, 1.0) * ho_wavefunction(p1, 1, 1.0);
  CHECK(expected > 0.0);
  CHECK(momentum_boundary_defect(psi0, psi1, p1) == doctest::Approx(expected).epsilon(1e-12));

  const BasisFunction a0 = BasisFunction::boundary_adjusted(p1, 0);
  const BasisFunction a1 = BasisFunction::boundary_adjusted(p1, 1);
  CHECK(momentum_boundary_defect(a0, a1, p1) <= 1e-12);
}

TEST_CASE("matrices export as full symmetric CSV") {
  const Matrix h = box_hamiltonian(kP4, 3);
  std::ostringstream os;
  write_csv(os, h);
  std::istringstream is(os.str());
  std::string line;
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string cell;
    int col = 0;
    while (std::getline(ls, cell, ',')) {
      CHECK(std::stod(cell) == doctest::Approx(h(rows, col)).epsilon(1e-15).scale(1e-300));
      ++col;
    }
    CHECK(col == 3);
    ++rows;
  }
  CHECK(rows == 3);
}
