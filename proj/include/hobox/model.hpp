#pragma once

#include <numbers>
#include <string_view>

namespace hobox {

/// Physical configuration of an oscillator of frequency omega confined to the
/// box [-L, L]. Construct through make_params(), which validates the inputs.
class Params {
 public:
  double mass() const { return m_; }
  double hbar() const { return hbar_; }
  double omega() const { return omega_; }
  double half_width() const { return L_; }

  /// Dimensionless mixing parameter m*omega*L^2/hbar.
  double beta() const { return beta_; }

  /// Oscillator length sqrt(hbar/(m*omega)); throws Domain when omega == 0.
  double oscillator_length() const;

 private:
  friend Params make_params(double m, double hbar, double omega, double L);
  Params(double m, double hbar, double omega, double L);

  double m_;
  double hbar_;
  double omega_;
  double L_;
  double beta_;
};

Params make_params(double m, double hbar, double omega, double L);

enum class RegimeTag {
  OscillatorDominated,
  TwoGroundStates,
  OscillatorGroundOnly,
  PerturbativeBox,
};

struct Regime {
  RegimeTag tag;
  double beta;
};

std::string_view regime_name(RegimeTag tag);

// Exact box limit (omega = 0). Index n is 0-based, n = 0 is the ground state.
double box_energy(const Params& p, int n);
double box_wavefunction(const Params& p, int n, double q);
double box_wavefunction_derivative(const Params& p, int n, double q);

// Exact oscillator limit (L -> infinity). Requires omega > 0.
double ho_energy(const Params& p, int n);
double ho_wavefunction(const Params& p, int n, double q);
double ho_wavefunction_derivative(const Params& p, int n, double q);

/// Normalized dimensionless Hermite function
///   psi_n(x) = H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)),
/// evaluated by the normalized three-term recurrence so no factorials appear.
double hermite_function(int n, double x);

/// psi_n(x) together with its x-derivative.
struct HermiteValue {
  double value;
  double derivative;
};
HermiteValue hermite_function_with_derivative(int n, double x);

/// H_n(x) / sqrt(2^n n!) without the Gaussian factor; same sign and roots as H_n.
double hermite_polynomial_normalized(int n, double x);

double critical_energy(const Params& p);
double n_max_ho(const Params& p);
double n_max_box(const Params& p);

Regime classify_regime(const Params& p);

inline constexpr double kDefaultBetaC = std::numbers::pi / 2.0;

/// Maps beta onto the abstract two-mode coupling lambda = beta/(beta + beta_c).
double lambda_of_beta(double beta, double beta_c = kDefaultBetaC);

}  // namespace hobox
