#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "hobox/eigen.hpp"
#include "hobox/error.hpp"

namespace hobox {

namespace {

// Box eigenfunction without the |q| >= L cutoff, for boundary diagnostics.
double box_formula(const Params& p, int n, double q) {
  const double L = p.half_width();
  const double k = (n + 1) * std::numbers::pi / (2.0 * L);
  return (n % 2 == 0 ? std::cos(k * q) : std::sin(k * q)) / std::sqrt(L);
}

// Conforming representation space: span of the first nb box functions, with
// point values available on a Gauss-Legendre grid fine enough to resolve
// products of any two of them.
class BoxSpace {
 public:
  BoxSpace(const Params& p, int nb, const QuadratureSpec& spec)
      : p_(p),
        nb_(nb),
        rule_(box_rule(spec, p.half_width(), 2.0 * nb * std::numbers::pi / (2.0 * p.half_width()))) {
    const std::size_t g = rule_.size();
    phi_ = Matrix(nb, g);
    energies_.resize(nb);
    edge_plus_.resize(nb);
    edge_minus_.resize(nb);
    const auto q = rule_.nodes();
    for (int j = 0; j < nb; ++j) {
      energies_[j] = box_energy(p, j);
      edge_plus_[j] = box_formula(p, j, p.half_width());
      edge_minus_[j] = box_formula(p, j, -p.half_width());
      for (std::size_t i = 0; i < g; ++i) phi_(j, i) = box_wavefunction(p, j, q[i]);
    }
    potential_.resize(g);
    const double k = p.mass() * p.omega() * p.omega();
    for (std::size_t i = 0; i < g; ++i) potential_[i] = 0.5 * k * q[i] * q[i];
  }

  std::size_t grid_size() const { return rule_.size(); }
  std::span<const double> nodes() const { return rule_.nodes(); }

  // Subtract the linear interpolant of the endpoint values, then expand.
  std::vector<double> project(std::vector<double> values, double at_minus, double at_plus) const {
    const double L = p_.half_width();
    const auto q = rule_.nodes();
    const auto w = rule_.weights();
    for (std::size_t i = 0; i < values.size(); ++i)
      values[i] -= 0.5 * (1.0 + q[i] / L) * at_plus + 0.5 * (1.0 - q[i] / L) * at_minus;
    std::vector<double> c(nb_, 0.0);
    for (int j = 0; j < nb_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) s += w[i] * phi_(j, i) * values[i];
      c[j] = s;
    }
    return c;
  }

  std::vector<double> values(const std::vector<double>& c) const {
    std::vector<double> f(rule_.size(), 0.0);
    for (int j = 0; j < nb_; ++j) {
      if (c[j] == 0.0) continue;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] += c[j] * phi_(j, i);
    }
    return f;
  }

  double edge(const std::vector<double>& c, bool plus) const {
    const auto& e = plus ? edge_plus_ : edge_minus_;
    double s = 0.0;
    for (int j = 0; j < nb_; ++j) s += c[j] * e[j];
    return s;
  }

  // Projected H f for f = sum c_j Phi_j.
  std::vector<double> apply_h(const std::vector<double>& c) const {
    std::vector<double> tc(nb_);
    for (int j = 0; j < nb_; ++j) tc[j] = energies_[j] * c[j];
    std::vector<double> hf = values(tc);
    const std::vector<double> f = values(c);
    for (std::size_t i = 0; i < hf.size(); ++i) hf[i] += potential_[i] * f[i];
    const double v_edge = 0.5 * p_.mass() * p_.omega() * p_.omega() * p_.half_width() * p_.half_width();
    const double at_plus = edge(tc, true) + v_edge * edge(c, true);
    const double at_minus = edge(tc, false) + v_edge * edge(c, false);
    return project(std::move(hf), at_minus, at_plus);
  }

  // Upper bound on the norm of the projected Hamiltonian.
  double scale() const {
    const double L = p_.half_width();
    return energies_.back() + 0.5 * p_.mass() * p_.omega() * p_.omega() * L * L;
  }

  double boundary_ratio(const std::vector<double>& c) const {
    const auto f = values(c);
    double peak = 0.0;
    for (double v : f) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    return std::max(std::abs(edge(c, true)), std::abs(edge(c, false))) / peak;
  }

 private:
  Params p_;
  int nb_;
  QuadratureRule rule_;
  Matrix phi_;
  std::vector<double> energies_;
  std::vector<double> edge_plus_;
  std::vector<double> edge_minus_;
  std::vector<double> potential_;
};

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

std::function<double(double)> gaussian_start(double center, double width) {
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center))
    fail(ErrorCode::InvalidArgument, "gaussian_start: width must be positive and finite");
  return [center, width](double q) {
    const double x = (q - center) / width;
    return std::exp(-0.5 * x * x);
  };
}

double default_start_width(const Params& p) {
  return p.omega() > 0.0 ? p.oscillator_length() : 0.5 * p.half_width();
}

double default_start_center(const Params& p) { return 0.2 * p.half_width(); }

LanczosResult modified_lanczos(const Params& p, const std::function<double(double)>& initial,
                               const LanczosOptions& options) {
  if (options.k < 1) fail(ErrorCode::InvalidArgument, "modified_lanczos: k must be >= 1");
  if (options.expansion_dim < 1) fail(ErrorCode::InvalidArgument, "modified_lanczos: expansion_dim must be >= 1");
  if (!initial) fail(ErrorCode::InvalidArgument, "modified_lanczos: missing initial function");

  const BoxSpace space(p, options.expansion_dim, options.quadrature);
  const double L = p.half_width();

  std::vector<double> start(space.grid_size());
  const auto q = space.nodes();
  for (std::size_t i = 0; i < start.size(); ++i) start[i] = initial(q[i]);
  const double at_plus = initial(L);
  const double at_minus = initial(-L);
  for (double v : start)
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "modified_lanczos: initial function is not finite");
  std::vector<double> v0 = space.project(std::move(start), at_minus, at_plus);
  const double n0 = norm2(v0);
  if (!(n0 > 1e-12)) fail(ErrorCode::InvalidArgument, "modified_lanczos: initial vector vanishes after projection");
  for (double& x : v0) x /= n0;

  LanczosResult result;
  std::vector<std::vector<double>> basis{v0};
  std::vector<std::vector<double>> hbasis;
  result.max_boundary_ratio = space.boundary_ratio(v0);

  for (int it = 0; it < options.k; ++it) {
    hbasis.push_back(space.apply_h(basis[it]));
    result.iterations = it + 1;
    if (it + 1 == options.k) break;

    std::vector<double> r = hbasis[it];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) axpy(-dot(v, r), v, r);
    const double beta = norm2(r);
    if (beta < 1e-12 * space.scale()) {
      result.breakdown = true;
      break;
    }
    for (double& x : r) x /= beta;
    result.max_boundary_ratio = std::max(result.max_boundary_ratio, space.boundary_ratio(r));
    basis.push_back(std::move(r));
  }

  const std::size_t m = hbasis.size();
  Matrix t(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t(i, j) = dot(basis[i], hbasis[j]);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) t(i, j) = t(j, i) = 0.5 * (t(i, j) + t(j, i));
  const EigenDecomposition ritz = sym_eigen(t);

  const std::size_t nb = static_cast<std::size_t>(options.expansion_dim);
  Spectrum& s = result.spectrum;
  s.energies = ritz.values;
  s.vectors = Matrix(nb, m);
  s.residuals.resize(m);
  s.effective_dim = m;
  s.truncation_tol = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<double> y(nb, 0.0);
    std::vector<double> hy(nb, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      axpy(ritz.vectors(i, k), basis[i], y);
      axpy(ritz.vectors(i, k), hbasis[i], hy);
    }
    for (std::size_t j = 0; j < nb; ++j) s.vectors(j, k) = y[j];
    const double hn = norm2(hy);
    axpy(-ritz.values[k], y, hy);
    s.residuals[k] = norm2(hy) / std::max(hn, std::numeric_limits<double>::min());
  }
  s.converged_count = 0;
  while (s.converged_count < m && s.residuals[s.converged_count] <= 1e-8) ++s.converged_count;
  auto box = std::make_shared<const BasisSet>(box_basis(p, options.expansion_dim));
  s.labels = box->labels();
  s.basis = std::move(box);
  return result;
}

}  // namespace hobox
