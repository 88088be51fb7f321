#pragma once

// Two-branch finite-strain viscoelasticity on top of the equilibrium
// modified exponentiated Hencky spring:
//
//   branch A: W_A = mu_A / k_A e^{k_A |dev log b_e^A|^2}   (nonlinear Maxwell)
//   branch B: W_B = mu_B |dev log b_e^B|^2                 (quadratic Maxwell)
//
// Each branch carries its elastic Finger tensor b_e. The flow rule is
// deviatoric and isotropic with viscosity eta_D:
//
//   -1/2 (L_v b_e) b_e^{-1} = 1/(2 eta_D) dev tau_NEQ
//
// Note the minus sign: the relation is integrated in its dissipative form
// (b_e relaxes towards the identity under a held deformation). Integration
// uses an elastic predictor b_trial = f_rel b_e f_rel^T followed by a
// backward-Euler corrector in principal logarithmic strains
// eps_e = 1/2 log b_e:
//
//   eps_e = eps_trial - dt / (2 eta_D) dev tau(eps_e).

#include <string>

#include "hencky/hyperelastic.hpp"
#include "hencky/series.hpp"
#include "hencky/tensor.hpp"

namespace hencky {

/// Maxwell-branch moduli (MPa) and deviatoric viscosities (MPa s).
/// A zero modulus switches the branch off.
struct ViscoParams {
  double mu_A = 0.0;
  double k_A = 0.0;
  double eta_D_A = 12.0;
  double mu_B = 0.0;
  double eta_D_B = 1.0;

  bool operator==(const ViscoParams&) const = default;
};

void validate(const ViscoParams& p);

enum class Branch { A, B };

/// Kirchhoff stress 2 (dW/db_e) b_e of one branch; deviatoric.
SymTensor3 branch_stress(const SymTensor3& b_e, Branch branch, const ViscoParams& p);
/// Branch energy. For k_A = 0 the excess form mu_A |dev log b_e|^2 is returned.
double branch_energy(const SymTensor3& b_e, Branch branch, const ViscoParams& p);

struct ViscoState {
  SymTensor3 b_e_A = SymTensor3::identity();
  SymTensor3 b_e_B = SymTensor3::identity();
  DefGrad f_prev = DefGrad::identity();
  double t = 0.0;

  /// Relaxed branches at deformation f.
  static ViscoState relaxed(const DefGrad& f) { return {SymTensor3::identity(), SymTensor3::identity(), f, 0.0}; }
};

enum class CorrectorMode {
  /// Scalar Newton on the deviatoric strain norm (branch A), closed form (B).
  reduced,
  /// Full three-equation Newton in principal strains; used for verification.
  full_newton,
};

struct UpdateOptions {
  CorrectorMode corrector = CorrectorMode::reduced;
  double tol = 1e-12;
  int max_iter = 50;
};

struct StepResult {
  ViscoState state;
  SymTensor3 tau_total;
  SymTensor3 tau_eq;
  SymTensor3 tau_A;
  SymTensor3 tau_B;
};

/// Advances both branches from st.f_prev to f_new over dt and returns the
/// new state with the spatial Kirchhoff stresses.
StepResult update_state(const ViscoState& st, const DefGrad& f_new, double dt, const EhmParams& eq,
                        const ViscoParams& vp, const UpdateOptions& opts = {});

// --- cyclic loading -------------------------------------------------------------

enum class LoadMode { shear, uniaxial };

std::string to_string(LoadMode m);
LoadMode load_mode_from_string(const std::string& s);

/// Strain-controlled sinusoid strain(t) = pre_strain + amplitude sin(2 pi f t).
/// In shear mode the strain is gamma, in uniaxial mode log(lambda_1)
/// (tension positive; a compressive pre-strain is negative).
struct LoadProgram {
  LoadMode mode = LoadMode::shear;
  double amplitude = 0.0;
  double frequency = 1.0;
  double pre_strain = 0.0;
  int cycles = 5;
  int steps_per_cycle = 200;
  /// true: the specimen starts relaxed at the pre-strain (a held static
  /// pre-strain). false: it starts virgin at F = 1 and the program strain is
  /// applied in the first increment.
  bool pre_strain_relaxed = false;
};

void validate(const LoadProgram& lp);

/// Columns: t_s, strain, stress_MPa, branchA_norm, branchB_norm.
/// stress_MPa is tau_12 in shear and sigma_11 in uniaxial mode; the uniaxial
/// lateral stretch makes sigma_22 (all branches included) vanish.
/// Meta carries the program so the series is self-describing.
CurveSeries simulate_cyclic(const LoadProgram& lp, const EhmParams& eq, const ViscoParams& vp,
                            const UpdateOptions& opts = {});

/// Dissipated energy density (MPa) over the final cycle: the closed
/// trapezoidal integral of stress d(gamma) in shear and stress d(lambda_1)
/// in uniaxial mode. Throws InputError for less than one full cycle and
/// InvariantError if the result is below -1e-9.
double dissipation_per_cycle(const CurveSeries& series);

}  // namespace hencky
