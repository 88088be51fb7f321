#pragma once

// Homogeneous deformation protocols: simple shear, uniaxial compression
// (measured lateral strain or model-consistent lateral strain), confined
// pseudo-hydrostatic compression, and strain sweeps over each of them.

#include <optional>
#include <span>
#include <string>

#include "hencky/hyperelastic.hpp"
#include "hencky/series.hpp"
#include "hencky/tensor.hpp"

namespace hencky {

// --- simple shear -------------------------------------------------------------

/// Largest eigenvalue of U in simple shear: (sqrt(gamma^2 + 4) + gamma) / 2.
double shear_stretch(double gamma);
/// Closed-form log U of simple shear.
SymTensor3 shear_log_stretch(double gamma);
/// Closed-form tau_12 of the modified exponentiated Hencky model.
double shear_kirchhoff(double gamma, const EhmParams& p);

// --- uniaxial compression -----------------------------------------------------

/// Principal log strains of an axisymmetric uniaxial state. The derived
/// measures a and x are computed on demand.
struct UniaxialState {
  double log_lambda1 = 0.0;
  double log_lambda2 = 0.0;

  double a() const { return 2.0 / 3.0 * (log_lambda1 - log_lambda2); }
  double x() const { return log_lambda1 + 2.0 * log_lambda2; }
  SymTensor3 log_u() const { return SymTensor3::diag(log_lambda1, log_lambda2, log_lambda2); }
};

/// Uniaxial stress obtained by projecting the Cauchy stress on its
/// deviatoric part (s_dev) and on its spherical part (s_sph).
struct UniaxialStress {
  double s_dev = 0.0;
  double s_sph = 0.0;
};

UniaxialStress uniaxial_stress_measured(const UniaxialState& st, const EhmParams& p);

struct UniaxialSolution {
  UniaxialState state;
  double stress = 0.0;          ///< sigma_11 (MPa)
  double lateral_residual = 0.0; ///< sigma_22 at the returned state (MPa)
  int iterations = 0;
};

/// Lateral log strain making the transverse Cauchy stress vanish.
/// Throws ConvergenceError with the residual if the solver fails.
UniaxialSolution uniaxial_solve(double log_lambda1, const EhmParams& p);

/// -log(lambda2) / log(lambda1). Throws DomainError for zero axial strain.
double poisson_hat(const UniaxialState& st);

// --- pseudo-hydrostatic compression ------------------------------------------

struct PseudoHydroResult {
  double sigma11 = 0.0;  ///< axial Cauchy stress (MPa), tension positive
  double pressure = 0.0; ///< tr(sigma)/3 (MPa), tension positive
  /// Deviatoric-to-pressure quotient s11/p; empty when p = 0.
  std::optional<double> ratio;
};

/// Kinematic path log U = diag(log_lambda1, 0, 0).
PseudoHydroResult pseudo_hydro(double log_lambda1, const EhmParams& p);

// --- sweeps -------------------------------------------------------------------

enum class SweepMode { shear, uniaxial, pseudo_hydro };

std::string to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

/// Tabulates a driver over a strictly monotone strain grid.
///
///   shear:        strain, stress_MPa                       (gamma, tau_12)
///   uniaxial:     strain_log_axial, strain_log_lateral, stress_MPa, poisson_hat
///   pseudo_hydro: strain, det_F, stress_MPa, pressure_MPa, ratio
///
/// Values are tension-positive; writers may flip the sign convention.
/// At zero strain poisson_hat and ratio take their small-strain limits.
CurveSeries sweep(SweepMode mode, std::span<const double> grid, const EhmParams& p);

}  // namespace hencky
