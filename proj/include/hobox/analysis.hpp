#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hobox/eigen.hpp"
#include "hobox/model.hpp"
#include "hobox/quadrature.hpp"

namespace hobox {

inline constexpr int kReferenceDim = 400;

/// Dense diagonalization of the analytic box-basis Hamiltonian. The lowest
/// dim - dim/4 levels are marked converged.
Spectrum reference_spectrum(const Params& p, int dim = kReferenceDim);

/// (m omega^2 / 2) <Phi_n|q^2|Phi_n> = (1/6) m omega^2 L^2 (1 - 6/((n+1)^2 pi^2)).
double first_order_correction(const Params& p, int n);
double perturbed_box_energy(const Params& p, int n);
/// 2 m^2 omega^2 L^4 / (3 hbar^2 pi^2); first-order theory holds for n above it.
double pt_validity_threshold(const Params& p);

struct DeviationRow {
  int n = 0;
  double exact = 0.0;
  double ho = 0.0;
  double box = 0.0;
  double pt = 0.0;
  // exact - estimate
  double d_ho = 0.0;
  double d_box = 0.0;
  double d_pt = 0.0;
  // 1 - estimate / exact
  double rel_ho = 0.0;
  double rel_box = 0.0;
  double rel_pt = 0.0;
};

struct DeviationTable {
  std::vector<DeviationRow> rows;
  bool truncated = false;
  std::string warning;
};

/// Rows n_first..n_last, cut at the reference's converged count.
DeviationTable deviation_table(const Spectrum& reference, const Params& p, int n_first, int n_last);

struct Component {
  int box_index = 0;
  double amplitude = 0.0;
  double probability = 0.0;
};

struct ComponentTable {
  int state_index = 0;
  std::vector<Component> components;
  double norm_check = 0.0;
};

/// <Phi_j|state> for j < box_dim. Components of the parity sector the state
/// does not occupy are set to exactly zero.
ComponentTable components_in_box_basis(const Spectrum& spectrum, const Params& p, int state, int box_dim,
                                       const QuadratureSpec& spec = {});

/// |<Psi_n|state>|^2 with Psi_n the oscillator eigenfunction cut to [-L, L]
/// and not renormalized, so the value also carries the weight Psi_n keeps
/// inside the box.
double ho_overlap(const Spectrum& spectrum, const Params& p, int state, int n, const QuadratureSpec& spec = {});

struct CoherencePair {
  int a = 0;
  int b = 0;
  double similarity = 0.0;
  bool cross_parity = false;
};

/// For every pair a < b of the given states: cosine similarity of the box
/// probability vectors P_a[j] and P_b[j + (b - a)], i.e. with each histogram
/// aligned on its own state index.
std::vector<CoherencePair> coherence_profile(const Spectrum& spectrum, const Params& p, const std::vector<int>& indices,
                                             int box_dim, const QuadratureSpec& spec = {});

inline constexpr int kAlphaCap = 200;

/// Smallest alpha such that a box basis of dimension n_target + 1 + alpha puts
/// E_{n_target} within rel_tol of the reference. A null reference means
/// reference_spectrum(p).
int alpha_study(const Params& p, int n_target, double rel_tol, const Spectrum* reference = nullptr,
                int cap = kAlphaCap);

/// n_max_box / sqrt(3).
double alpha_estimate(const Params& p);

struct VariationalResult {
  double energy = 0.0;
  double width = 0.0;
};

/// Rayleigh quotient of cos(pi q / 2L) exp(-q^2 / 2b^2) minimized over b by a
/// log-spaced scan and golden-section search on log b within
/// [lower, upper]; zero bounds select [L/50, 50 max(b_ho, L)].
VariationalResult variational_ground_state(const Params& p, double lower = 0.0, double upper = 0.0);

/// Rayleigh quotient of the trial function at width b.
double variational_energy(const Params& p, double b);

void write_csv(std::ostream& os, const DeviationTable& table);
void write_csv(std::ostream& os, const ComponentTable& table);

}  // namespace hobox
