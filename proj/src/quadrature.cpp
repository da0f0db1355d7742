#include "hobox/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hobox/error.hpp"

namespace hobox {

namespace {

constexpr double kPi = std::numbers::pi;

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int order, int panels, double a, double b) {
  if (order < 2) fail(ErrorCode::InvalidArgument, "gauss_legendre: order must be >= 2");
  if (panels < 1) fail(ErrorCode::InvalidArgument, "gauss_legendre: panels must be >= 1");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::InvalidArgument, "gauss_legendre: need finite a < b");

  std::vector<double> x(order);
  std::vector<double> w(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(order, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) fail(ErrorCode::Numerical, "gauss_legendre: Newton iteration did not converge");
    const double dp = legendre(order, z).second;
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[order - 1 - i] = z;
    w[i] = wi;
    w[order - 1 - i] = wi;
  }
  if (order % 2 == 1) x[order / 2] = 0.0;

  QuadratureRule rule;
  rule.order_ = order;
  rule.panels_ = panels;
  rule.a_ = a;
  rule.b_ = b;
  rule.nodes_.reserve(static_cast<std::size_t>(order) * panels);
  rule.weights_.reserve(static_cast<std::size_t>(order) * panels);
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == panels) ? b : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (int i = 0; i < order; ++i) {
      rule.nodes_.push_back(mid + h * x[i]);
      rule.weights_.push_back(h * w[i]);
    }
  }
  return rule;
}

int panels_for_wavenumber(const QuadratureSpec& spec, double L, double wavenumber) {
  if (spec.order < 2 || spec.panels < 1) fail(ErrorCode::InvalidArgument, "quadrature spec out of range");
  const double needed = std::ceil(wavenumber * L * 4.0 / spec.order);
  return std::max(spec.panels, static_cast<int>(needed));
}

QuadratureRule box_rule(const QuadratureSpec& spec, double L, double wavenumber) {
  return QuadratureRule::gauss_legendre(spec.order, panels_for_wavenumber(spec, L, wavenumber), -L, L);
}

double box_q2_element(const Params& p, int m, int n) {
  if (m < 0 || n < 0) fail(ErrorCode::Domain, "box_q2_element: negative index");
  if ((m - n) % 2 != 0) return 0.0;
  const double L = p.half_width();
  if (m == n) {
    const double k = (n + 1) * kPi;
    return L * L * (1.0 / 3.0 - 2.0 / (k * k));
  }
  // Both wavenumber sum and difference are integer multiples of pi/L, so
  // int_{-L}^{L} q^2 cos(kq) dq collapses to 4 L cos(kL) / k^2.
  const int jd = (m - n) / 2;
  const int js = (m + n + 2) / 2;
  const double kd = jd * kPi / L;
  const double ks = js * kPi / L;
  const double id = 4.0 * L * ((jd % 2 == 0) ? 1.0 : -1.0) / (kd * kd);
  const double is = 4.0 * L * ((js % 2 == 0) ? 1.0 : -1.0) / (ks * ks);
  // cos*cos = (cos(d) + cos(s))/2, sin*sin = (cos(d) - cos(s))/2
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return (id + sign * is) / (2.0 * L);
}

bool projection_uses_infinite_limits(const Params& p) {
  if (!(p.omega() > 0.0)) return false;
  const double b = p.oscillator_length();
  const double L = p.half_width();
  return std::exp(-L * L / (2.0 * b * b)) < 1e-8;
}

double ho_onto_box_projection(const Params& p, int ho_n, int box_j, bool infinite_limits, const QuadratureSpec& spec) {
  if (ho_n < 0 || box_j < 0) fail(ErrorCode::Domain, "ho_onto_box_projection: negative index");
  if (!(p.omega() > 0.0)) fail(ErrorCode::Domain, "ho_onto_box_projection: requires omega > 0");
  if ((ho_n - box_j) % 2 != 0) return 0.0;

  const double L = p.half_width();
  const double b = p.oscillator_length();
  const double k = (box_j + 1) * kPi / (2.0 * L);
  if (infinite_limits && projection_uses_infinite_limits(p)) {
    // int Psi_n(q) e^{ikq} dq = sqrt(2 pi b) i^n psi_n(kb)
    const double phase = ((ho_n / 2) % 2 == 0) ? 1.0 : -1.0;
    return phase * std::sqrt(2.0 * kPi * b / L) * hermite_function(ho_n, k * b);
  }
  const double kho = std::sqrt(2.0 * ho_n + 1.0) / b;
  const QuadratureRule rule = box_rule(spec, L, k + kho);
  return rule.integrate([&](double q) { return box_wavefunction(p, box_j, q) * ho_wavefunction(p, ho_n, q); });
}

}  // namespace hobox
