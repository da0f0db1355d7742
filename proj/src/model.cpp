#include "hobox/model.hpp"

#include <cmath>
#include <string>

#include "hobox/error.hpp"

namespace hobox {

namespace {

constexpr double kPi = std::numbers::pi;

void require_index(int n, const char* what) {
  if (n < 0) fail(ErrorCode::Domain, std::string(what) + ": negative level index " + std::to_string(n));
}

void require_oscillator(const Params& p, const char* what) {
  if (!(p.omega() > 0.0)) fail(ErrorCode::Domain, std::string(what) + ": requires omega > 0");
}

double box_wavenumber(const Params& p, int n) { return (n + 1) * kPi / (2.0 * p.half_width()); }

}  // namespace

Params::Params(double m, double hbar, double omega, double L)
    : m_(m), hbar_(hbar), omega_(omega), L_(L), beta_(m * omega * L * L / hbar) {}

Params make_params(double m, double hbar, double omega, double L) {
  if (!std::isfinite(m) || !std::isfinite(hbar) || !std::isfinite(omega) || !std::isfinite(L))
    fail(ErrorCode::InvalidArgument, "params: non-finite input");
  if (m <= 0.0) fail(ErrorCode::InvalidArgument, "params: mass must be > 0");
  if (hbar <= 0.0) fail(ErrorCode::InvalidArgument, "params: hbar must be > 0");
  if (L <= 0.0) fail(ErrorCode::InvalidArgument, "params: L must be > 0");
  if (omega < 0.0) fail(ErrorCode::InvalidArgument, "params: omega must be >= 0");
  Params p(m, hbar, omega, L);
  if (!std::isfinite(p.beta())) fail(ErrorCode::InvalidArgument, "params: beta overflows");
  return p;
}

double Params::oscillator_length() const {
  if (!(omega_ > 0.0)) fail(ErrorCode::Domain, "oscillator length undefined for omega = 0");
  return std::sqrt(hbar_ / (m_ * omega_));
}

std::string_view regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::OscillatorDominated: return "OscillatorDominated";
    case RegimeTag::TwoGroundStates: return "TwoGroundStates";
    case RegimeTag::OscillatorGroundOnly: return "OscillatorGroundOnly";
    case RegimeTag::PerturbativeBox: return "PerturbativeBox";
  }
  return "Unknown";
}

double box_energy(const Params& p, int n) {
  require_index(n, "box_energy");
  const double k = (n + 1) * kPi / 2.0;
  const double r = p.hbar() / p.half_width();
  return k * k * r * r / (2.0 * p.mass());
}

double box_wavefunction(const Params& p, int n, double q) {
  require_index(n, "box_wavefunction");
  const double L = p.half_width();
  if (std::abs(q) >= L) return 0.0;
  const double k = box_wavenumber(p, n);
  const double amp = 1.0 / std::sqrt(L);
  return (n % 2 == 0) ? amp * std::cos(k * q) : amp * std::sin(k * q);
}

double box_wavefunction_derivative(const Params& p, int n, double q) {
  require_index(n, "box_wavefunction_derivative");
  const double L = p.half_width();
  if (std::abs(q) > L) return 0.0;
  const double k = box_wavenumber(p, n);
  const double amp = k / std::sqrt(L);
  return (n % 2 == 0) ? -amp * std::sin(k * q) : amp * std::cos(k * q);
}

double ho_energy(const Params& p, int n) {
  require_index(n, "ho_energy");
  require_oscillator(p, "ho_energy");
  return p.hbar() * p.omega() * (n + 0.5);
}

double ho_wavefunction(const Params& p, int n, double q) {
  require_index(n, "ho_wavefunction");
  require_oscillator(p, "ho_wavefunction");
  const double b = p.oscillator_length();
  return hermite_function(n, q / b) / std::sqrt(b);
}

double ho_wavefunction_derivative(const Params& p, int n, double q) {
  require_index(n, "ho_wavefunction_derivative");
  require_oscillator(p, "ho_wavefunction_derivative");
  const double b = p.oscillator_length();
  return hermite_function_with_derivative(n, q / b).derivative / (b * std::sqrt(b));
}

double hermite_function(int n, double x) { return hermite_function_with_derivative(n, x).value; }

HermiteValue hermite_function_with_derivative(int n, double x) {
  require_index(n, "hermite_function");
  const double psi0 = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(kPi));
  if (n == 0) return {psi0, -x * psi0};
  double prev = psi0;
  double cur = std::sqrt(2.0) * x * psi0;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {cur, std::sqrt(2.0 * n) * prev - x * cur};
}

double hermite_polynomial_normalized(int n, double x) {
  require_index(n, "hermite_polynomial_normalized");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = std::sqrt(2.0) * x;
  for (int k = 1; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double critical_energy(const Params& p) {
  const double L = p.half_width();
  return 0.5 * p.mass() * p.omega() * p.omega() * L * L;
}

double n_max_ho(const Params& p) {
  require_oscillator(p, "n_max_ho");
  return 0.5 * p.beta() - 0.5;
}

double n_max_box(const Params& p) {
  require_oscillator(p, "n_max_box");
  return 2.0 / kPi * p.beta() - 1.0;
}

Regime classify_regime(const Params& p) {
  const double beta = p.beta();
  const double half_pi = kPi / 2.0;
  // Ties go to the weaker-mixing side.
  RegimeTag tag = RegimeTag::PerturbativeBox;
  if (beta > half_pi * half_pi) {
    tag = RegimeTag::OscillatorDominated;
  } else if (beta > half_pi) {
    tag = RegimeTag::TwoGroundStates;
  } else if (beta > 1.0) {
    tag = RegimeTag::OscillatorGroundOnly;
  }
  return {tag, beta};
}

double lambda_of_beta(double beta, double beta_c) {
  if (!(beta_c > 0.0) || !std::isfinite(beta_c)) fail(ErrorCode::Domain, "lambda_of_beta: beta_c must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail(ErrorCode::Domain, "lambda_of_beta: beta must be finite and >= 0");
  return beta / (beta + beta_c);
}

}  // namespace hobox
