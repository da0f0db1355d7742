#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hobox/basis.hpp"
#include "hobox/matrix.hpp"
#include "hobox/model.hpp"
#include "hobox/quadrature.hpp"

namespace hobox {

struct AssemblyOptions {
  QuadratureSpec quadrature;
  bool allow_nonconforming = false;
};

/// Half-open index range [begin, end) inside the matrix order.
struct BlockRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

/// Hamiltonian and overlap (Gram) matrix over one basis, both symmetric.
struct ObliqueSystem {
  Matrix hamiltonian;
  Matrix overlap;
  std::vector<std::string> labels;
  BlockRange box_block;
  BlockRange mho_block;
  // Relative asymmetry measured before the (H + H^T)/2 symmetrization.
  double hamiltonian_defect = 0.0;
  double overlap_defect = 0.0;
  std::shared_ptr<const BasisSet> basis;

  std::size_t dim() const { return labels.size(); }
};

/// Throws NonConforming naming the first function that does not vanish at +-L,
/// unless allow_nonconforming is set.
void check_conforming(const BasisSet& basis, bool allow_nonconforming);

Matrix overlap_matrix(const BasisSet& basis, const AssemblyOptions& options = {});

/// <f|p^2/2m + m omega^2 q^2/2|g> on [-L, L]; kinetic part in the symmetric
/// first-derivative form (hbar^2/2m) int f' g'. `defect` receives the
/// asymmetry before symmetrization.
Matrix hamiltonian_matrix(const Params& p, const BasisSet& basis, const AssemblyOptions& options = {},
                          double* defect = nullptr);

ObliqueSystem assemble(const Params& p, BasisSet basis, const AssemblyOptions& options = {});

/// Closed-form box Hamiltonian box_energy(n) delta_mn + (m omega^2/2) <m|q^2|n>.
Matrix box_hamiltonian(const Params& p, int N);

/// Magnitude of the anti-hermitian boundary term of the momentum operator,
/// hbar * |f(L) g(L) - f(-L) g(-L)|.
double momentum_boundary_defect(const BasisFunction& f, const BasisFunction& g, const Params& p);

/// int f g over [-L, L] with a rule sized for the pair.
double inner_product(const BasisFunction& f, const BasisFunction& g, const QuadratureSpec& spec = {});

}  // namespace hobox
