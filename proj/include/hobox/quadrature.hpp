#pragma once

#include <span>
#include <vector>

#include "hobox/model.hpp"

namespace hobox {

/// Resolution requested for matrix elements: Gauss-Legendre order per panel and
/// the minimum number of panels on [-L, L].
struct QuadratureSpec {
  int order = 32;
  int panels = 4;
};

/// Composite Gauss-Legendre rule on [a, b]; immutable once built.
class QuadratureRule {
 public:
  static QuadratureRule gauss_legendre(int order, int panels, double a, double b);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  int order() const { return order_; }
  int panels() const { return panels_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  std::size_t size() const { return nodes_.size(); }

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(nodes_[i]);
    return sum;
  }

 private:
  QuadratureRule() = default;

  std::vector<double> nodes_;
  std::vector<double> weights_;
  int order_ = 0;
  int panels_ = 0;
  double a_ = 0.0;
  double b_ = 0.0;
};

/// Panel count for integrating a product whose combined local wavenumber is at
/// most `wavenumber` over [-L, L]: never below spec.panels, raised until every
/// panel holds wavenumber * half_panel <= order / 4.
int panels_for_wavenumber(const QuadratureSpec& spec, double L, double wavenumber);

/// Rule on [-L, L] sized for the given combined wavenumber.
QuadratureRule box_rule(const QuadratureSpec& spec, double L, double wavenumber);

/// <Phi_m | q^2 | Phi_n> over [-L, L], in closed form.
double box_q2_element(const Params& p, int m, int n);

/// <Phi_j | Psi_n>. With infinite_limits the oscillator function is integrated
/// over the whole line (closed form via the Fourier self-similarity of Hermite
/// functions); this is only used when exp(-L^2 / 2b^2) < 1e-8, otherwise the
/// finite-interval quadrature is returned.
double ho_onto_box_projection(const Params& p, int ho_n, int box_j, bool infinite_limits,
                              const QuadratureSpec& spec = {});

/// True when the whole-line closed form is used for the given parameters.
bool projection_uses_infinite_limits(const Params& p);

}  // namespace hobox
