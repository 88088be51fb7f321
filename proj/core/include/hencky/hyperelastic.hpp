#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "hencky/tensor.hpp"

namespace hencky {

/// Parameters of the modified exponentiated Hencky energy
///
///   W = mu/k e^{k |dev log U|^2} + kappa/(2 k_hat) e^{k_hat x^2}
///       + kappa1/(m k_tilde) e^{k_tilde |x|^m},      x = tr log U.
///
/// Moduli in MPa, everything else dimensionless.
struct EhmParams {
  double mu = 0.0;
  double k = 0.0;
  double kappa = 0.0;
  double k_hat = 0.0;
  double kappa1 = 0.0;
  double k_tilde = 0.0;
  double m = 4.0;

  bool operator==(const EhmParams&) const = default;
};

struct ValidationOptions {
  /// Enforce k >= 1/4 and k_hat >= 1/8 (literature rank-one convexity bounds
  /// for the planar energy).
  bool strict = false;
};

/// Throws DomainError for violated invariants. Returns configuration
/// warnings (currently: m == 2 couples kappa1 into the infinitesimal bulk modulus).
std::vector<std::string> validate(const EhmParams& p, ValidationOptions opts = {});

/// Density grades of the reference material.
enum class Tdm { d500, d600, d800 };

std::string to_string(Tdm grade);
Tdm tdm_from_string(const std::string& s);

/// Fitted equilibrium parameters for each density grade.
EhmParams reference_params(Tdm grade);

/// Tangent estimates of the moduli used to seed identification.
struct ModuliGuess {
  double mu;
  double kappa;
  double kappa1;
};
ModuliGuess initial_moduli_guess(Tdm grade);

// --- modified exponentiated Hencky ------------------------------------------

/// Spherical Kirchhoff stress as a function of x = tr log U:
/// kappa e^{k_hat x^2} x + kappa1 e^{k_tilde |x|^m} sign(x) |x|^{m-1}.
double ehm_pressure(double x, const EhmParams& p);
/// d/dx of ehm_pressure.
double ehm_pressure_slope(double x, const EhmParams& p);

/// Strain energy in MPa. Throws DomainError when k, k_hat (or k_tilde with
/// kappa1 > 0) is zero: the energy carries the constant mu/k and is undefined
/// there. Use energy_ehm_excess for the k -> 0 limit.
double energy_ehm(const SymTensor3& log_u, const EhmParams& p);
/// W(log U) - W(0); finite and continuous for every nonlinearity parameter >= 0.
double energy_ehm_excess(const SymTensor3& log_u, const EhmParams& p);
SymTensor3 kirchhoff_ehm(const SymTensor3& log_u, const EhmParams& p);
SymTensor3 cauchy_ehm(const SymTensor3& log_u, const EhmParams& p);

// --- reference energies -----------------------------------------------------

/// mu |dev log U|^2 + kappa/2 (tr log U)^2
double energy_hencky(const SymTensor3& log_u, double mu, double kappa);
SymTensor3 kirchhoff_hencky(const SymTensor3& log_u, double mu, double kappa);
/// Exponentiated Hencky (no kappa1 term).
double energy_eh(const SymTensor3& log_u, double mu, double k, double kappa, double k_hat);
SymTensor3 kirchhoff_eh(const SymTensor3& log_u, double mu, double k, double kappa, double k_hat);

// --- classical comparison models --------------------------------------------
// Compressible extensions with the decoupled volumetric energy
// (kappa_vol / 2) (ln J)^2; isochoric invariants use F_bar = J^{-1/3} F.

struct ArrudaBoyce {
  double mu = 0.0;
  double lambda_lock = 0.0;
  double kappa_vol = 0.0;
};

struct MooneyRivlin {
  double c10 = 0.0;
  double c01 = 0.0;
  double kappa_vol = 0.0;
};

/// W_iso = sum_p mu_p / alpha_p (sum_i lambda_bar_i^alpha_p - 3)
struct Ogden3 {
  std::array<double, 3> mu_p{};
  std::array<double, 3> alpha_p{};
  double kappa_vol = 0.0;
};

using ClassicalParams = std::variant<ArrudaBoyce, MooneyRivlin, Ogden3>;

std::string model_name(const ClassicalParams& p);
void validate(const ClassicalParams& p);

double energy_classical(const DefGrad& f, const ClassicalParams& p);
SymTensor3 cauchy_classical(const DefGrad& f, const ClassicalParams& p);

}  // namespace hencky
