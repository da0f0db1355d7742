#include "hobox/basis.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "hobox/error.hpp"

namespace hobox {

namespace {

constexpr double kPi = std::numbers::pi;

void require_oscillator(const Params& p, const char* what) {
  if (!(p.omega() > 0.0)) fail(ErrorCode::Domain, std::string(what) + ": requires omega > 0");
}

}  // namespace

double hermite_outer_node(int n) {
  if (n < 2) fail(ErrorCode::Domain, "hermite_outer_node: n must be >= 2");
  // Every root of H_n lies below sqrt(2n+1) and adjacent roots are at least
  // ~pi/sqrt(2n+1) apart, so a quarter of that step cannot skip a sign change.
  const double top = std::sqrt(2.0 * n + 1.0);
  const double step = 0.25 * kPi / top;
  double hi = top;
  double f_hi = hermite_polynomial_normalized(n, hi);
  if (!std::isfinite(f_hi) || f_hi <= 0.0) fail(ErrorCode::Numerical, "hermite_outer_node: bad upper bracket");
  double lo = hi;
  for (;;) {
    lo = hi - step;
    if (lo <= 0.0) fail(ErrorCode::Numerical, "hermite_outer_node: no sign change found");
    if (hermite_polynomial_normalized(n, lo) <= 0.0) break;
    hi = lo;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hermite_polynomial_normalized(n, mid) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BasisFunction BasisFunction::box(const Params& p, int n) {
  if (n < 0) fail(ErrorCode::Domain, "box basis function: negative index");
  return BasisFunction(BasisKind::Box, n, p);
}

BasisFunction BasisFunction::potential_width(const Params& p, int n, const QuadratureSpec& spec) {
  if (n < 0) fail(ErrorCode::Domain, "potential-width function: negative index");
  require_oscillator(p, "potential-width function");
  BasisFunction f(BasisKind::MhoPotentialWidth, n, p);
  const double L = p.half_width();
  // E_n^box = m omega_n^2 L^2 / 2  =>  omega_n = hbar (1 + 2n) / (m L^2)
  const double omega_n = p.hbar() * (1.0 + 2.0 * n) / (p.mass() * L * L);
  const double b_n = std::sqrt(p.hbar() / (p.mass() * omega_n));
  f.length_ = p.oscillator_length();
  f.scale_ = f.length_ / b_n;
  f.normalize(spec);
  return f;
}

BasisFunction BasisFunction::nodal(const Params& p, int n, const QuadratureSpec& spec) {
  require_oscillator(p, "nodal function");
  BasisFunction f(BasisKind::MhoNodal, n, p);
  f.length_ = p.oscillator_length();
  f.scale_ = f.length_ * hermite_outer_node(n) / p.half_width();
  f.normalize(spec);
  return f;
}

BasisFunction BasisFunction::boundary_adjusted(const Params& p, int n, const QuadratureSpec& spec) {
  if (n < 0) fail(ErrorCode::Domain, "boundary-adjusted function: negative index");
  require_oscillator(p, "boundary-adjusted function");
  BasisFunction f(BasisKind::MhoBoundaryAdjusted, n, p);
  f.length_ = p.oscillator_length();
  f.edge_plus_ = f.raw_value(p.half_width());
  f.edge_minus_ = f.raw_value(-p.half_width());
  f.normalize(spec);
  return f;
}

BasisFunction BasisFunction::raw_oscillator(const Params& p, int n) {
  if (n < 0) fail(ErrorCode::Domain, "raw oscillator function: negative index");
  require_oscillator(p, "raw oscillator function");
  BasisFunction f(BasisKind::RawOscillator, n, p);
  f.length_ = p.oscillator_length();
  return f;
}

std::string BasisFunction::label() const {
  switch (kind_) {
    case BasisKind::Box: return "box:" + std::to_string(index_);
    case BasisKind::RawOscillator: return "ho:" + std::to_string(index_);
    default: return "mho:" + std::to_string(index_);
  }
}

double BasisFunction::wavenumber() const {
  const double L = params_.half_width();
  if (kind_ == BasisKind::Box) return (index_ + 1) * kPi / (2.0 * L);
  return std::sqrt(2.0 * index_ + 1.0) * scale_ / length_ + kPi / (2.0 * L);
}

double BasisFunction::raw_value(double q) const {
  return hermite_function(index_, scale_ * q / length_) / std::sqrt(length_);
}

double BasisFunction::raw_derivative(double q) const {
  const double s = scale_ / length_;
  return hermite_function_with_derivative(index_, s * q).derivative * s / std::sqrt(length_);
}

double BasisFunction::value(double q) const {
  const double L = params_.half_width();
  if (kind_ == BasisKind::Box) return box_wavefunction(params_, index_, q);
  if (std::abs(q) > L) return 0.0;
  double v = raw_value(q);
  if (kind_ == BasisKind::MhoBoundaryAdjusted) {
    v -= 0.5 * (1.0 + q / L) * edge_plus_ + 0.5 * (1.0 - q / L) * edge_minus_;
  }
  return norm_ * v;
}

double BasisFunction::derivative(double q) const {
  const double L = params_.half_width();
  if (kind_ == BasisKind::Box) return box_wavefunction_derivative(params_, index_, q);
  if (std::abs(q) > L) return 0.0;
  double d = raw_derivative(q);
  if (kind_ == BasisKind::MhoBoundaryAdjusted) d -= 0.5 * (edge_plus_ - edge_minus_) / L;
  return norm_ * d;
}

void BasisFunction::normalize(const QuadratureSpec& spec) {
  norm_ = 1.0;
  const QuadratureRule rule = box_rule(spec, params_.half_width(), 2.0 * wavenumber());
  const double nn = rule.integrate([&](double q) {
    const double v = value(q);
    return v * v;
  });
  if (!(nn > 0.0) || !std::isfinite(nn))
    fail(ErrorCode::Numerical, "basis function " + label() + " has zero norm on the box");
  norm_ = 1.0 / std::sqrt(nn);
}

BasisSet::BasisSet(std::vector<BasisFunction> functions) : functions_(std::move(functions)) {
  std::set<std::string> seen;
  for (const auto& f : functions_) {
    if (!seen.insert(f.label()).second) fail(ErrorCode::InvalidArgument, "duplicate basis label " + f.label());
  }
}

std::vector<std::string> BasisSet::labels() const {
  std::vector<std::string> out;
  out.reserve(functions_.size());
  for (const auto& f : functions_) out.push_back(f.label());
  return out;
}

BasisSet box_basis(const Params& p, int N) {
  if (N < 1) fail(ErrorCode::Domain, "box_basis: N must be >= 1");
  std::vector<BasisFunction> fs;
  fs.reserve(N);
  for (int n = 0; n < N; ++n) fs.push_back(BasisFunction::box(p, n));
  return BasisSet(std::move(fs));
}

BasisSet mho_basis(const Params& p, int N, MhoStrategy strategy, const QuadratureSpec& spec) {
  if (N < 1) fail(ErrorCode::Domain, "mho_basis: N must be >= 1");
  require_oscillator(p, "mho_basis");
  std::vector<BasisFunction> fs;
  fs.reserve(N);
  for (int k = 0; k < N; ++k) {
    switch (strategy) {
      case MhoStrategy::PotentialWidth: fs.push_back(BasisFunction::potential_width(p, k, spec)); break;
      case MhoStrategy::Nodal: fs.push_back(BasisFunction::nodal(p, k + 2, spec)); break;
      case MhoStrategy::BoundaryAdjusted: fs.push_back(BasisFunction::boundary_adjusted(p, k, spec)); break;
    }
  }
  return BasisSet(std::move(fs));
}

BasisSet raw_oscillator_basis(const Params& p, int N) {
  if (N < 1) fail(ErrorCode::Domain, "raw_oscillator_basis: N must be >= 1");
  std::vector<BasisFunction> fs;
  for (int n = 0; n < N; ++n) fs.push_back(BasisFunction::raw_oscillator(p, n));
  return BasisSet(std::move(fs));
}

BasisSet concat(const BasisSet& a, const BasisSet& b) {
  std::vector<BasisFunction> fs(a.begin(), a.end());
  fs.insert(fs.end(), b.begin(), b.end());
  return BasisSet(std::move(fs));
}

MhoStrategy parse_mho_strategy(const std::string& name) {
  if (name == "potential-width") return MhoStrategy::PotentialWidth;
  if (name == "nodal") return MhoStrategy::Nodal;
  if (name == "boundary") return MhoStrategy::BoundaryAdjusted;
  fail(ErrorCode::InvalidArgument, "unknown MHO strategy '" + name + "'");
}

std::string strategy_name(MhoStrategy s) {
  switch (s) {
    case MhoStrategy::PotentialWidth: return "potential-width";
    case MhoStrategy::Nodal: return "nodal";
    case MhoStrategy::BoundaryAdjusted: return "boundary";
  }
  return "unknown";
}

}  // namespace hobox
