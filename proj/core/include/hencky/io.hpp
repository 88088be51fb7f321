#pragma once

// File formats.
//
// CSV: a block of "# key: value" header lines (mode, units, sign_convention
// and series metadata), one row of column names, then comma-separated
// numbers printed with 9 significant digits ("%.8e").
//
// JSON: parameter records use the field names of the C++ structs.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hencky/calibration.hpp"
#include "hencky/hyperelastic.hpp"
#include "hencky/lm.hpp"
#include "hencky/series.hpp"
#include "hencky/viscoelastic.hpp"

namespace hencky {

using Json = nlohmann::json;

/// "%.8e" with negative zero printed as positive zero.
std::string format_number(double v);
/// v rounded to what format_number prints.
double round_sig9(double v);

inline constexpr const char* kTensionPositive = "tension_positive";
inline constexpr const char* kCompressionPositive = "compression_positive";

/// Negates the named columns and records this in the metadata
/// (sign_convention, flipped_columns) so readers can undo it.
void flip_to_compression_positive(CurveSeries& s, const std::vector<std::string>& columns);
/// Inverse of the above, driven by the metadata; no-op for tension-positive series.
void restore_tension_positive(CurveSeries& s);

/// Compression-positive presentation of uniaxial and pseudo_hydro sweeps
/// (strains, stresses and pressure flipped); other modes are left alone.
void apply_plot_convention(CurveSeries& s);

/// Throws InvariantError on a non-finite value or a row of the wrong width.
void write_csv(std::ostream& os, const CurveSeries& s);
void write_csv(const std::filesystem::path& path, const CurveSeries& s);

/// Errors (InputError) name the file and the line.
CurveSeries read_csv(std::istream& is, const std::string& source = "<stream>");
CurveSeries read_csv(const std::filesystem::path& path);

/// Column names required per mode:
///   shear_eq, pseudo_hydro_eq   strain, stress_MPa
///   uniaxial_eq                 strain_log_axial, strain_log_lateral, stress_MPa
///   cyclic_*                    t_s, strain, stress_MPa (+ frequency_Hz in the header)
/// Compression-positive files are converted back to tension-positive.
Dataset dataset_from_series(const CurveSeries& s, DatasetMode mode, const std::string& source);
Dataset parse_dataset(const std::filesystem::path& path, DatasetMode mode);

/// A dataset as a CurveSeries in the layout parse_dataset reads.
CurveSeries dataset_to_series(const Dataset& d);

// --- JSON ---------------------------------------------------------------------

Json to_json(const EhmParams& p);
EhmParams ehm_params_from_json(const Json& j);
Json to_json(const ViscoParams& p);
ViscoParams visco_params_from_json(const Json& j);
Json to_json(const LoadProgram& lp);
LoadProgram load_program_from_json(const Json& j);
Json to_json(const ClassicalParams& p);
ClassicalParams classical_params_from_json(const Json& j);
Json to_json(const FitResult& r);
Json to_json(const std::vector<DatasetRms>& rms);
Json to_json(const CurveSeries& s);

/// Copy with every floating-point number rounded to 9 significant digits.
Json round_numbers(const Json& j);

Json read_json(const std::filesystem::path& path);
/// Parameter file: an EhmParams object, or {"material": "TDM500"} for a
/// reference row.
EhmParams load_ehm_params(const std::filesystem::path& path);

/// frequency_Hz, amplitude, mu_A, k_A, mu_B, rms_MPa, ok
CurveSeries grid_table(const std::vector<GridCellResult>& cells);

// --- campaign configuration -----------------------------------------------------

struct DatasetRef {
  std::filesystem::path path;
  DatasetMode mode = DatasetMode::shear_eq;
  std::string name;
  double weight = 1.0;
};

/// Relative paths are resolved against the directory of the config file.
struct CampaignConfig {
  std::string material;
  std::optional<std::filesystem::path> params_path;
  std::optional<ViscoParams> visco;
  std::vector<DatasetRef> datasets;
  std::optional<EhmParams> initial;
  std::vector<ParamSpec> bounds = default_ehm_bounds();
  bool snap_m = true;
  std::optional<std::vector<double>> m_starts;
  LmOptions lm;
  std::optional<LoadProgram> load_program;
  ViscoFitOptions visco_fit;
  std::vector<std::string> classical_models;

  /// Reads all referenced datasets, applying the configured names and weights.
  std::vector<Dataset> load_datasets() const;
  /// From the parameter file, else the reference row named by `material`.
  EhmParams equilibrium_params() const;
  /// `initial`, else the moduli-based guess for `material`.
  EhmParams initial_guess() const;
};

/// Throws InputError for unknown keys, invalid modes and missing files.
CampaignConfig load_campaign(const std::filesystem::path& path);
CampaignConfig campaign_from_json(const Json& j, const std::filesystem::path& base_dir);

}  // namespace hencky
