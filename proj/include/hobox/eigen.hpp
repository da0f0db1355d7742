#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hobox/assembly.hpp"
#include "hobox/basis.hpp"
#include "hobox/matrix.hpp"
#include "hobox/quadrature.hpp"

namespace hobox {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // orthonormal columns, matching values
};

/// Full eigendecomposition of a real symmetric matrix by Householder
/// tridiagonalization followed by implicit QL. Rejects inputs whose relative
/// asymmetry exceeds 1e-8. Each eigenvector is signed so that its
/// largest-magnitude component is positive.
EigenDecomposition sym_eigen(const Matrix& a);

/// Eigenvalues only (ascending); skips the eigenvector accumulation.
std::vector<double> sym_eigenvalues(const Matrix& a);

/// Overlap eigenmodes below trunc_tol * max(overlap eigenvalue) are dropped.
inline constexpr double kDefaultTruncTol = 1e-12;

/// Ascending energies with coefficient vectors in the generating basis order.
struct Spectrum {
  std::vector<double> energies;
  Matrix vectors;  // basis_dim x energies.size()
  std::size_t effective_dim = 0;
  double truncation_tol = 0.0;
  // ||H v - E Theta v|| / ||H v|| per pair.
  std::vector<double> residuals;
  std::vector<std::string> labels;
  std::shared_ptr<const BasisSet> basis;
  // Leading states considered converged with respect to basis size.
  std::size_t converged_count = 0;

  std::size_t size() const { return energies.size(); }
  std::size_t basis_dim() const { return vectors.rows(); }
  std::vector<double> state(std::size_t i) const { return vectors.column(i); }
};

/// Generalized problem H v = E Theta v with linear-dependence truncation:
/// Theta = U s U^T, keep s_i >= trunc_tol * max(s), whiten, solve, map back.
/// Eigenvectors come out Theta-orthonormal.
Spectrum gevp(const ObliqueSystem& system, double trunc_tol = kDefaultTruncTol);

struct LanczosOptions {
  int k = 40;
  // Size of the box basis spanning the conforming representation space.
  int expansion_dim = 200;
  QuadratureSpec quadrature;
};

struct LanczosResult {
  Spectrum spectrum;  // Ritz pairs; vectors expressed in box_basis(p, expansion_dim)
  bool breakdown = false;
  int iterations = 0;
  // Largest |v(+-L)| / max |v| over all Krylov vectors after projection.
  double max_boundary_ratio = 0.0;
};

/// Lanczos iteration on the confined Hamiltonian where every new vector
/// H v_n is first projected into the conforming space (boundary adjustment,
/// then expansion on the box basis), then fully re-orthogonalized against all
/// previous vectors; matrix elements of H are taken only after projection.
LanczosResult modified_lanczos(const Params& p, const std::function<double(double)>& initial,
                               const LanczosOptions& options = {});

/// exp(-(q - center)^2 / (2 width^2)).
std::function<double(double)> gaussian_start(double center, double width);

/// Width b of the oscillator, or L/2 when omega = 0.
double default_start_width(const Params& p);
/// Off-centre (L/5) so both parity sectors appear in the Krylov space.
double default_start_center(const Params& p);

}  // namespace hobox
