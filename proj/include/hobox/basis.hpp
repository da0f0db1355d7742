#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hobox/model.hpp"
#include "hobox/quadrature.hpp"

namespace hobox {

enum class BasisKind {
  Box,
  MhoPotentialWidth,
  MhoNodal,
  MhoBoundaryAdjusted,
  // Psi_n cut to [-L, L] with no adjustment and no renormalization.
  RawOscillator,
};

enum class MhoStrategy { PotentialWidth, Nodal, BoundaryAdjusted };

/// One real basis function on [-L, L]; zero outside. Oscillator-derived kinds
/// evaluate norm * psi_n(scale * q / b) (minus the linear boundary term for
/// MhoBoundaryAdjusted), where psi_n is the dimensionless Hermite function.
class BasisFunction {
 public:
  static BasisFunction box(const Params& p, int n);
  static BasisFunction potential_width(const Params& p, int n, const QuadratureSpec& spec = {});
  static BasisFunction nodal(const Params& p, int n, const QuadratureSpec& spec = {});
  static BasisFunction boundary_adjusted(const Params& p, int n, const QuadratureSpec& spec = {});
  static BasisFunction raw_oscillator(const Params& p, int n);

  BasisKind kind() const { return kind_; }
  int index() const { return index_; }
  double scale() const { return scale_; }
  const Params& params() const { return params_; }
  std::string label() const;

  /// +1 for even functions, -1 for odd ones; always (-1)^index.
  int parity() const { return (index_ % 2 == 0) ? 1 : -1; }

  /// Kinds that vanish at +-L by construction.
  bool conforming() const { return kind_ != BasisKind::MhoPotentialWidth && kind_ != BasisKind::RawOscillator; }

  /// Upper estimate of the local wavenumber, used to size quadrature rules.
  double wavenumber() const;

  double value(double q) const;
  double derivative(double q) const;

 private:
  BasisFunction(BasisKind kind, int index, const Params& p) : kind_(kind), index_(index), params_(p) {}

  double raw_value(double q) const;
  double raw_derivative(double q) const;
  void normalize(const QuadratureSpec& spec);

  BasisKind kind_;
  int index_;
  Params params_;
  double scale_ = 1.0;
  double length_ = 1.0;  // b used for the Hermite argument
  double norm_ = 1.0;
  double edge_plus_ = 0.0;   // raw Psi(L), boundary adjustment only
  double edge_minus_ = 0.0;  // raw Psi(-L)
};

/// Ordered, immutable collection of basis functions with unique labels. The
/// order is the row/column order used by assembly.
class BasisSet {
 public:
  BasisSet() = default;
  explicit BasisSet(std::vector<BasisFunction> functions);

  std::size_t size() const { return functions_.size(); }
  bool empty() const { return functions_.empty(); }
  const BasisFunction& operator[](std::size_t i) const { return functions_[i]; }
  std::span<const BasisFunction> functions() const { return functions_; }
  std::vector<std::string> labels() const;

  auto begin() const { return functions_.begin(); }
  auto end() const { return functions_.end(); }

 private:
  std::vector<BasisFunction> functions_;
};

/// Phi_0 .. Phi_{N-1}.
BasisSet box_basis(const Params& p, int N);

/// N modified oscillator functions. Nodal sets hold Psi_2 .. Psi_{N+1} since
/// Psi_0 and Psi_1 have no pair of outer nodes to move onto the walls.
BasisSet mho_basis(const Params& p, int N, MhoStrategy strategy, const QuadratureSpec& spec = {});

/// Raw restricted oscillator functions Psi_0 .. Psi_{N-1} (non-conforming).
BasisSet raw_oscillator_basis(const Params& p, int N);

/// a followed by b; labels must stay unique.
BasisSet concat(const BasisSet& a, const BasisSet& b);

/// Largest root of H_n (n >= 2), to ~1e-15 relative.
double hermite_outer_node(int n);

MhoStrategy parse_mho_strategy(const std::string& name);
std::string strategy_name(MhoStrategy s);

}  // namespace hobox
