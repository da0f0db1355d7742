#include "hobox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "hobox/assembly.hpp"
#include "hobox/basis.hpp"
#include "hobox/error.hpp"

namespace hobox {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

void require_state(const Spectrum& s, int state, const char* what) {
  if (state < 0 || static_cast<std::size_t>(state) >= s.size())
    fail(ErrorCode::Domain, std::string(what) + ": state index " + std::to_string(state) + " out of range");
  if (!s.basis || s.basis->size() != s.basis_dim())
    fail(ErrorCode::InvalidArgument, std::string(what) + ": spectrum carries no basis");
}

bool is_box_prefix(const BasisSet& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].kind() != BasisKind::Box || basis[i].index() != static_cast<int>(i)) return false;
  return true;
}

// <Phi_j|state> for j < box_dim, with the unoccupied parity sector zeroed.
std::vector<double> box_amplitudes(const Spectrum& s, const Params& p, int state, int box_dim,
                                   const QuadratureSpec& spec) {
  if (box_dim < 1) fail(ErrorCode::InvalidArgument, "box_dim must be >= 1");
  const BasisSet& basis = *s.basis;
  const std::vector<double> c = s.state(static_cast<std::size_t>(state));
  std::vector<double> amp(box_dim, 0.0);
  if (is_box_prefix(basis)) {
    for (int j = 0; j < box_dim && static_cast<std::size_t>(j) < c.size(); ++j) amp[j] = c[j];
  } else {
    for (int j = 0; j < box_dim; ++j) {
      const BasisFunction phi = BasisFunction::box(p, j);
      double sum = 0.0;
      for (std::size_t i = 0; i < basis.size(); ++i) {
        if (c[i] == 0.0 || basis[i].parity() != phi.parity()) continue;
        sum += c[i] * inner_product(phi, basis[i], spec);
      }
      amp[j] = sum;
    }
  }
  double even = 0.0;
  double odd = 0.0;
  for (int j = 0; j < box_dim; ++j) (j % 2 == 0 ? even : odd) += amp[j] * amp[j];
  const double total = even + odd;
  if (total > 0.0 && std::min(even, odd) < 1e-12 * total) {
    const int drop = even < odd ? 0 : 1;
    for (int j = drop; j < box_dim; j += 2) amp[j] = 0.0;
  }
  return amp;
}

std::vector<double> probabilities(const Spectrum& s, const Params& p, int state, int box_dim,
                                  const QuadratureSpec& spec) {
  auto amp = box_amplitudes(s, p, state, box_dim, spec);
  for (double& a : amp) a *= a;
  return amp;
}

}  // namespace

Spectrum reference_spectrum(const Params& p, int dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "reference_spectrum: dim must be >= 1");
  const Matrix h = box_hamiltonian(p, dim);
  EigenDecomposition eig = sym_eigen(h);
  Spectrum s;
  s.energies = std::move(eig.values);
  s.vectors = std::move(eig.vectors);
  s.effective_dim = static_cast<std::size_t>(dim);
  s.truncation_tol = 0.0;
  s.converged_count = static_cast<std::size_t>(dim - dim / 4);
  auto basis = std::make_shared<const BasisSet>(box_basis(p, dim));
  s.labels = basis->labels();
  s.basis = std::move(basis);
  s.residuals.resize(s.energies.size());
  for (std::size_t k = 0; k < s.energies.size(); ++k) {
    const auto v = s.vectors.column(k);
    auto hv = h * v;
    const double hn = norm2(hv);
    for (std::size_t i = 0; i < hv.size(); ++i) hv[i] -= s.energies[k] * v[i];
    s.residuals[k] = norm2(hv) / std::max(hn, std::numeric_limits<double>::min());
  }
  return s;
}

double first_order_correction(const Params& p, int n) {
  if (n < 0) fail(ErrorCode::Domain, "first_order_correction: negative level index");
  return 0.5 * p.mass() * p.omega() * p.omega() * box_q2_element(p, n, n);
}

double perturbed_box_energy(const Params& p, int n) { return box_energy(p, n) + first_order_correction(p, n); }

double pt_validity_threshold(const Params& p) {
  const double m = p.mass();
  const double w = p.omega();
  const double L = p.half_width();
  const double hb = p.hbar();
  return 2.0 * m * m * w * w * L * L * L * L / (3.0 * hb * hb * kPi * kPi);
}

DeviationTable deviation_table(const Spectrum& reference, const Params& p, int n_first, int n_last) {
  if (n_first < 0 || n_last < n_first) fail(ErrorCode::InvalidArgument, "deviation_table: bad level range");
  DeviationTable table;
  const int limit = static_cast<int>(std::min(reference.converged_count, reference.size()));
  if (n_last >= limit) {
    table.truncated = true;
    table.warning = "levels above " + std::to_string(limit - 1) + " are not converged; table truncated";
    n_last = limit - 1;
  }
  for (int n = n_first; n <= n_last; ++n) {
    DeviationRow r;
    r.n = n;
    r.exact = reference.energies[n];
    r.ho = p.hbar() * p.omega() * (n + 0.5);
    r.box = box_energy(p, n);
    r.pt = perturbed_box_energy(p, n);
    r.d_ho = r.exact - r.ho;
    r.d_box = r.exact - r.box;
    r.d_pt = r.exact - r.pt;
    r.rel_ho = 1.0 - r.ho / r.exact;
    r.rel_box = 1.0 - r.box / r.exact;
    r.rel_pt = 1.0 - r.pt / r.exact;
    table.rows.push_back(r);
  }
  return table;
}

ComponentTable components_in_box_basis(const Spectrum& spectrum, const Params& p, int state, int box_dim,
                                       const QuadratureSpec& spec) {
  require_state(spectrum, state, "components_in_box_basis");
  const auto amp = box_amplitudes(spectrum, p, state, box_dim, spec);
  ComponentTable t;
  t.state_index = state;
  t.components.reserve(amp.size());
  for (int j = 0; j < box_dim; ++j) {
    t.components.push_back({j, amp[j], amp[j] * amp[j]});
    t.norm_check += amp[j] * amp[j];
  }
  return t;
}

double ho_overlap(const Spectrum& spectrum, const Params& p, int state, int n, const QuadratureSpec& spec) {
  require_state(spectrum, state, "ho_overlap");
  if (n < 0) fail(ErrorCode::Domain, "ho_overlap: negative oscillator index");
  if (!(p.omega() > 0.0)) fail(ErrorCode::Domain, "ho_overlap: requires omega > 0");
  const BasisSet& basis = *spectrum.basis;
  const std::vector<double> c = spectrum.state(static_cast<std::size_t>(state));
  double sum = 0.0;
  if (is_box_prefix(basis)) {
    for (std::size_t j = n % 2; j < c.size(); j += 2) sum += c[j] * ho_onto_box_projection(p, n, static_cast<int>(j), false, spec);
  } else {
    const BasisFunction psi = BasisFunction::raw_oscillator(p, n);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (c[i] == 0.0 || basis[i].parity() != psi.parity()) continue;
      sum += c[i] * inner_product(psi, basis[i], spec);
    }
  }
  return std::min(1.0, sum * sum);
}

std::vector<CoherencePair> coherence_profile(const Spectrum& spectrum, const Params& p, const std::vector<int>& indices,
                                             int box_dim, const QuadratureSpec& spec) {
  if (indices.size() < 2) fail(ErrorCode::Domain, "coherence_profile: needs at least two states");
  std::vector<std::vector<double>> prob;
  for (int idx : indices) {
    require_state(spectrum, idx, "coherence_profile");
    if (static_cast<std::size_t>(idx) >= spectrum.converged_count)
      fail(ErrorCode::Domain, "coherence_profile: state " + std::to_string(idx) + " is not converged");
    prob.push_back(probabilities(spectrum, p, idx, box_dim, spec));
  }
  std::vector<CoherencePair> out;
  for (std::size_t x = 0; x < indices.size(); ++x) {
    for (std::size_t y = x + 1; y < indices.size(); ++y) {
      const int a = indices[x];
      const int b = indices[y];
      const int shift = b - a;
      double ab = 0.0;
      double aa = 0.0;
      double bb = 0.0;
      for (int j = 0; j < box_dim; ++j) {
        const int k = j + shift;
        if (k < 0 || k >= box_dim) continue;
        ab += prob[x][j] * prob[y][k];
        aa += prob[x][j] * prob[x][j];
        bb += prob[y][k] * prob[y][k];
      }
      const double sim = (aa > 0.0 && bb > 0.0) ? ab / std::sqrt(aa * bb) : 0.0;
      out.push_back({a, b, std::clamp(sim, 0.0, 1.0), (shift % 2) != 0});
    }
  }
  return out;
}

int alpha_study(const Params& p, int n_target, double rel_tol, const Spectrum* reference, int cap) {
  if (n_target < 0) fail(ErrorCode::InvalidArgument, "alpha_study: n_target must be >= 0");
  if (!(rel_tol > 0.0)) fail(ErrorCode::InvalidArgument, "alpha_study: rel_tol must be > 0");
  if (cap < 0) fail(ErrorCode::InvalidArgument, "alpha_study: cap must be >= 0");
  Spectrum own;
  if (!reference) {
    own = reference_spectrum(p);
    reference = &own;
  }
  if (static_cast<std::size_t>(n_target) >= reference->converged_count)
    fail(ErrorCode::Domain, "alpha_study: n_target beyond the converged reference");
  const double target = reference->energies[n_target];
  const Matrix h = box_hamiltonian(p, n_target + 1 + cap);
  for (int alpha = 0; alpha <= cap; ++alpha) {
    const auto e = sym_eigenvalues(h.leading_block(n_target + 1 + alpha));
    if (std::abs(e[n_target] - target) <= rel_tol * std::abs(target)) return alpha;
  }
  fail(ErrorCode::NotConverged, "alpha_study: no alpha <= " + std::to_string(cap) + " reaches the tolerance");
}

double alpha_estimate(const Params& p) { return n_max_box(p) / std::sqrt(3.0); }

double variational_energy(const Params& p, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) fail(ErrorCode::InvalidArgument, "variational_energy: width must be > 0");
  const double L = p.half_width();
  const double k = kPi / (2.0 * L);
  const auto rule = QuadratureRule::gauss_legendre(32, 64, -L, L);
  const double kin = p.hbar() * p.hbar() / (2.0 * p.mass());
  const double spring = 0.5 * p.mass() * p.omega() * p.omega();
  double norm = 0.0;
  double energy = 0.0;
  const auto q = rule.nodes();
  const auto w = rule.weights();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double g = std::exp(-0.5 * q[i] * q[i] / (b * b));
    const double f = std::cos(k * q[i]) * g;
    const double df = (-k * std::sin(k * q[i]) - q[i] / (b * b) * std::cos(k * q[i])) * g;
    norm += w[i] * f * f;
    energy += w[i] * (kin * df * df + spring * q[i] * q[i] * f * f);
  }
  return energy / norm;
}

VariationalResult variational_ground_state(const Params& p, double lower, double upper) {
  const double L = p.half_width();
  const double b_ho = p.omega() > 0.0 ? p.oscillator_length() : L;
  if (lower <= 0.0) lower = L / 50.0;
  if (upper <= 0.0) upper = 50.0 * std::max(b_ho, L);
  if (!(upper > lower)) fail(ErrorCode::InvalidArgument, "variational_ground_state: empty bracket");

  const double t0 = std::log(lower);
  const double t1 = std::log(upper);
  auto energy = [&](double t) { return variational_energy(p, std::exp(t)); };

  constexpr int kScan = 64;
  std::vector<double> e(kScan + 1);
  int best = 0;
  for (int i = 0; i <= kScan; ++i) {
    e[i] = energy(t0 + (t1 - t0) * i / kScan);
    if (e[i] < e[best]) best = i;
  }
  if (best == kScan) {
    if (p.omega() == 0.0) return {e[kScan], upper};
    fail(ErrorCode::Numerical, "variational_ground_state: minimum not bracketed (upper edge)");
  }
  if (best == 0) fail(ErrorCode::Numerical, "variational_ground_state: minimum not bracketed (lower edge)");

  double a = t0 + (t1 - t0) * (best - 1) / kScan;
  double d = t0 + (t1 - t0) * (best + 1) / kScan;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double b = d - r * (d - a);
  double c = a + r * (d - a);
  double fb = energy(b);
  double fc = energy(c);
  for (int it = 0; it < 200 && d - a > 1e-9; ++it) {
    if (fb <= fc) {
      d = c;
      c = b;
      fc = fb;
      b = d - r * (d - a);
      fb = energy(b);
    } else {
      a = b;
      b = c;
      fb = fc;
      c = a + r * (d - a);
      fc = energy(c);
    }
  }
  return fb <= fc ? VariationalResult{fb, std::exp(b)} : VariationalResult{fc, std::exp(c)};
}

void write_csv(std::ostream& os, const DeviationTable& table) {
  os << "n,E_exact,dE_HO,dE_box,dE_PT,rel_HO,rel_box,rel_PT\n";
  for (const auto& r : table.rows)
    os << r.n << ',' << fmt(r.exact) << ',' << fmt(r.d_ho) << ',' << fmt(r.d_box) << ',' << fmt(r.d_pt) << ','
       << fmt(r.rel_ho) << ',' << fmt(r.rel_box) << ',' << fmt(r.rel_pt) << '\n';
}

void write_csv(std::ostream& os, const ComponentTable& table) {
  os << "state,box_index,amplitude,probability\n";
  for (const auto& c : table.components)
    os << table.state_index << ',' << c.box_index << ',' << fmt(c.amplitude) << ',' << fmt(c.probability) << '\n';
}

}  // namespace hobox
