#pragma once

// Parameter identification against tagged stress-strain datasets: joint
// multi-mode fits of the equilibrium energy, per-(frequency, amplitude) fits
// of the Maxwell branches, and fits of the classical comparison models.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hencky/hyperelastic.hpp"
#include "hencky/lm.hpp"
#include "hencky/viscoelastic.hpp"

namespace hencky {

enum class DatasetMode { shear_eq, uniaxial_eq, pseudo_hydro_eq, cyclic_shear, cyclic_uniaxial };

std::string to_string(DatasetMode m);
DatasetMode dataset_mode_from_string(const std::string& s);
bool is_cyclic(DatasetMode m);

/// A measured (or synthetic) series. Strains are tension-positive:
///   shear_eq         strain = gamma,          stress = tau_12
///   uniaxial_eq      strain = log lambda_1,   lateral = log lambda_2, stress = s
///   pseudo_hydro_eq  strain = log lambda_1,   stress = sigma_11
///   cyclic_*         time,  strain (drive),   stress
struct Dataset {
  DatasetMode mode = DatasetMode::shear_eq;
  std::string name;
  std::vector<double> strain;
  std::vector<double> lateral;
  std::vector<double> stress;
  std::vector<double> time;
  double weight = 1.0;
  std::string density;
  // Cyclic program.
  double frequency = 0.0;
  double amplitude = 0.0;
  double pre_strain = 0.0;
  bool pre_strain_relaxed = false;

  std::size_t size() const { return stress.size(); }
};

/// Throws InputError for unequal columns, non-finite values, a missing
/// lateral column (uniaxial_eq), a non-monotone equilibrium strain, a
/// negative weight, or an invalid cyclic program.
void validate(const Dataset& d);

// --- equilibrium fits ---------------------------------------------------------

/// Order of the equilibrium parameter vector: mu, k, kappa, k_hat, kappa1, k_tilde, m.
std::vector<double> to_vector(const EhmParams& p);
EhmParams ehm_from_vector(std::span<const double> v);
std::vector<ParamSpec> default_ehm_bounds();

/// Concatenated weighted residuals of all datasets with weight > 0. Each
/// dataset is normalized by the RMS of its measured stress and scaled by
/// sqrt(weight). Uniaxial points contribute two residuals (deviatoric and
/// spherical projections). An empty vector means no active data.
std::vector<double> residuals_eq(const EhmParams& p, std::span<const Dataset> datasets);

/// Model stress predicted at the dataset's strains; for uniaxial_eq the
/// deviatoric projection.
std::vector<double> predict_eq(const EhmParams& p, const Dataset& d);

struct DatasetRms {
  std::string name;
  double rms = 0.0;  ///< MPa, unweighted
};

struct EquilibriumFitOptions {
  EhmParams initial;
  std::vector<ParamSpec> bounds = default_ehm_bounds();
  LmOptions lm;
  /// Also refit with m fixed at the nearest integer >= 2.
  bool snap_m = true;
  /// Continuation before the joint fit: (mu, k) on shear data, then the
  /// volumetric parameters on uniaxial and pseudo-hydrostatic data from each
  /// m in m_starts (m held fixed first, then freed). The best start seeds
  /// the joint fit. With staged = false only the joint fit runs.
  bool staged = true;
  std::vector<double> m_starts{3.0, 4.0, 5.0, 6.0, 8.0};
};

struct EquilibriumFit {
  EhmParams params;
  FitResult fit;  ///< the joint fit
  /// Residual norm of each continuation stage, in order.
  std::vector<std::pair<std::string, double>> stages;
  std::vector<DatasetRms> rms;
  std::optional<EhmParams> snapped_params;
  std::optional<FitResult> snapped_fit;
  std::vector<DatasetRms> snapped_rms;
};

/// Starting point built from tangent moduli estimates: nonlinearity
/// parameters at 1e-3 and m just above 2 (the log reparameterization
/// excludes the boundary values 0 and 2).
EhmParams initial_guess_from_moduli(const ModuliGuess& g);

/// Throws InputError when no dataset is active.
EquilibriumFit fit_equilibrium(std::span<const Dataset> datasets, const EquilibriumFitOptions& opts);

std::vector<DatasetRms> dataset_rms_eq(const EhmParams& p, std::span<const Dataset> datasets);

// --- viscoelastic grid fits ---------------------------------------------------

struct ViscoFitOptions {
  ViscoParams initial{0.1, 0.5, 12.0, 0.1, 1.0};
  int cycles = 5;
  int steps_per_cycle = 200;
  LmOptions lm;
  UpdateOptions update;
  unsigned threads = 1;
};

LoadProgram load_program_for(const Dataset& d, const ViscoFitOptions& opts);

/// Simulated stress over the final cycle of the dataset's program, sampled at
/// the measured times taken modulo the period.
std::vector<double> predict_cyclic(const Dataset& d, const EhmParams& eq, const ViscoParams& vp,
                                   const ViscoFitOptions& opts);

struct GridCellResult {
  std::string name;
  double frequency = 0.0;
  double amplitude = 0.0;
  ViscoParams params;
  FitResult fit;
  double rms = 0.0;  ///< MPa
  bool ok = false;
  std::string error;
};

/// Fits (mu_A, k_A, mu_B) of one cyclic dataset; viscosities are taken from
/// opts.initial and held fixed.
GridCellResult fit_visco_cell(const Dataset& d, const EhmParams& eq, const ViscoFitOptions& opts);

/// One independent fit per dataset. A cell whose simulation fails is flagged
/// (ok = false) and the remaining cells are still fitted.
std::vector<GridCellResult> fit_visco_grid(std::span<const Dataset> cells, const EhmParams& eq,
                                           const ViscoFitOptions& opts);

// --- classical comparison fits --------------------------------------------------

enum class ClassicalKind { arruda_boyce, mooney_rivlin, ogden3 };

std::string to_string(ClassicalKind k);
ClassicalKind classical_kind_from_string(const std::string& s);
ClassicalParams default_classical_guess(ClassicalKind k);

/// Uniaxial datasets use the measured kinematics diag(l1, l2, l2) and the
/// stress difference sigma_11 - sigma_22.
std::vector<double> predict_classical(const ClassicalParams& p, const Dataset& d);

struct ClassicalFit {
  ClassicalParams params;
  FitResult fit;
  std::vector<DatasetRms> rms;
};

ClassicalFit fit_classical(ClassicalKind kind, std::span<const Dataset> datasets,
                           const std::optional<ClassicalParams>& initial = {}, const LmOptions& lm = {});

// --- synthetic campaigns --------------------------------------------------------

struct SynthOptions {
  int points = 40;
  double shear_max = 1.0;
  /// Largest axial compression of the uniaxial series (log strain).
  double uniaxial_min_log = -1.2;
  /// Pseudo-hydrostatic series stops where |sigma_11| reaches this value.
  double pseudo_hydro_stress_max = 20.0;
  /// Multiplicative Gaussian noise level (0.01 = 1 %).
  double noise = 0.0;
  std::uint64_t seed = 0;
};

/// Shear, uniaxial (model-consistent lateral strain) and pseudo-hydrostatic
/// datasets generated from p.
std::vector<Dataset> synth_equilibrium_campaign(const EhmParams& p, const SynthOptions& opts);

/// One steady-state cycle of a simulated cyclic test, `samples` points.
Dataset synth_cyclic_cell(const LoadProgram& lp, const EhmParams& eq, const ViscoParams& vp,
                          int samples = 50, double noise = 0.0, std::uint64_t seed = 0);

}  // namespace hencky
