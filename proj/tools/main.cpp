// hencky: batch front end for sweeps, cyclic simulations, fits and
// model comparisons. Every number it prints comes from the core library.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hencky/calibration.hpp"
#include "hencky/drivers.hpp"
#include "hencky/error.hpp"
#include "hencky/io.hpp"

namespace fs = std::filesystem;
using namespace hencky;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitInvariant = 4;

void emit_error(const std::string& kind, const std::string& message, int code) {
  const Json j{{"error", {{"type", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << j.dump() << '\n';
}

struct ParamSource {
  std::string file;
  std::string material;

  void add_to(CLI::App* app) {
    auto* f = app->add_option("--params", file, "equilibrium parameter file (JSON)");
    auto* m = app->add_option("--material", material, "reference parameter row: TDM500, TDM600 or TDM800");
    f->excludes(m);
  }

  EhmParams resolve() const {
    if (!file.empty()) return load_ehm_params(file);
    if (!material.empty()) return reference_params(tdm_from_string(material));
    throw InputError("give --params FILE or --material NAME");
  }

  std::string label() const { return material.empty() ? fs::path(file).stem().string() : material; }
};

void write_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os) throw InputError("cannot write '" + out + "'");
  os << text;
}

std::string dump(const Json& j) { return j.dump(2) + '\n'; }

void write_series(const CurveSeries& s, const std::string& out, const std::string& format) {
  if (format == "json") {
    write_text(out, dump(to_json(s)));
  } else if (out.empty() || out == "-") {
    write_csv(std::cout, s);
  } else {
    write_csv(fs::path(out), s);
  }
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw InputError("--points must be at least 2");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

Json sym_json(const SymTensor3& t) {
  return Json{{"xx", t(0, 0)}, {"yy", t(1, 1)}, {"zz", t(2, 2)},
              {"xy", t(0, 1)}, {"yz", t(1, 2)}, {"xz", t(0, 2)}};
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw InputError("cannot create directory '" + dir + "': " + ec.message());
  return p;
}

// --- eval -----------------------------------------------------------------------

struct EvalArgs {
  ParamSource params;
  std::optional<double> gamma;
  std::vector<double> stretches;
  std::vector<double> f;
};

int run_eval(const EvalArgs& a) {
  const EhmParams p = a.params.resolve();
  const int given = a.gamma.has_value() + !a.stretches.empty() + !a.f.empty();
  if (given != 1) throw InputError("give exactly one of --gamma, --stretches, --F");
  DefGrad f = DefGrad::identity();
  if (a.gamma) f = DefGrad::simple_shear(*a.gamma);
  if (!a.stretches.empty()) f = DefGrad::diag(a.stretches[0], a.stretches[1], a.stretches[2]);
  if (!a.f.empty()) {
    Tensor3 t = Tensor3::from_columns({a.f[0], a.f[3], a.f[6]}, {a.f[1], a.f[4], a.f[7]}, {a.f[2], a.f[5], a.f[8]});
    f = DefGrad(t);
  }
  const SymTensor3 log_v = log_left_stretch(f);
  Json out{{"J", f.det()},
           {"log_V", sym_json(log_v)},
           {"kirchhoff_MPa", sym_json(kirchhoff_ehm(log_v, p))},
           {"cauchy_MPa", sym_json(cauchy_ehm(log_v, p))},
           {"energy_MPa", energy_ehm_excess(log_v, p)}};  // relative to the reference state
  std::cout << dump(round_numbers(out));
  return 0;
}

// --- sweep ----------------------------------------------------------------------

struct SweepArgs {
  ParamSource params;
  std::string mode;
  double from = 0.0;
  double to = 0.0;
  int points = 101;
  std::string out = "-";
  std::string format = "csv";
};

int run_sweep(const SweepArgs& a) {
  const EhmParams p = a.params.resolve();
  CurveSeries s = sweep(sweep_mode_from_string(a.mode), linspace(a.from, a.to, a.points), p);
  s.set_meta("material", a.params.label());
  apply_plot_convention(s);
  write_series(s, a.out, a.format);
  return 0;
}

// --- simulate -------------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& a) {
  const CampaignConfig c = load_campaign(a.config);
  if (!c.load_program) throw InputError(a.config + ": 'load_program' is required for simulate");
  if (!c.visco) throw InputError(a.config + ": 'visco' parameters are required for simulate");
  const EhmParams eq = c.equilibrium_params();
  CurveSeries s = simulate_cyclic(*c.load_program, eq, *c.visco);
  if (!c.material.empty()) s.set_meta("material", c.material);
  write_series(s, a.out, a.format);
  const Json summary{{"dissipation_per_cycle_MPa", dissipation_per_cycle(s)},
                     {"rows", s.size()},
                     {"load_program", to_json(*c.load_program)},
                     {"visco", to_json(*c.visco)},
                     {"equilibrium", to_json(eq)}};
  std::cout << dump(round_numbers(summary));
  return 0;
}

// --- fit ------------------------------------------------------------------------

struct FitArgs {
  std::string config;
  std::string out_dir;
};

CurveSeries fitted_curve(const Dataset& d, const EhmParams& p) {
  CurveSeries s;
  s.mode = "fit_" + to_string(d.mode);
  s.set_meta("name", d.name);
  if (d.mode == DatasetMode::uniaxial_eq) {
    s.columns = {"strain_log_axial", "strain_log_lateral", "stress_MPa", "model_dev_MPa", "model_sph_MPa"};
    for (std::size_t i = 0; i < d.size(); ++i) {
      const UniaxialStress m = uniaxial_stress_measured({d.strain[i], d.lateral[i]}, p);
      s.rows.push_back({d.strain[i], d.lateral[i], d.stress[i], m.s_dev, m.s_sph});
    }
  } else {
    s.columns = {"strain", "stress_MPa", "model_MPa"};
    const std::vector<double> m = predict_eq(p, d);
    for (std::size_t i = 0; i < d.size(); ++i) s.rows.push_back({d.strain[i], d.stress[i], m[i]});
  }
  return s;
}

int run_fit(const FitArgs& a) {
  const CampaignConfig c = load_campaign(a.config);
  const std::vector<Dataset> data = c.load_datasets();
  EquilibriumFitOptions opts;
  opts.initial = c.initial_guess();
  opts.bounds = c.bounds;
  opts.lm = c.lm;
  opts.snap_m = c.snap_m;
  if (c.m_starts) opts.m_starts = *c.m_starts;
  const EquilibriumFit fit = fit_equilibrium(data, opts);

  Json stages = Json::array();
  for (const auto& [label, norm] : fit.stages)
    stages.push_back({{"stage", label}, {"residual_norm", std::isfinite(norm) ? Json(norm) : Json(nullptr)}});
  Json out{{"material", c.material},
           {"initial", to_json(opts.initial)},
           {"params", to_json(fit.params)},
           {"fit", to_json(fit.fit)},
           {"rms", to_json(fit.rms)},
           {"stages", stages},
           {"warnings", validate(fit.params)}};
  if (fit.snapped_params) {
    out["snapped"] = {{"params", to_json(*fit.snapped_params)},
                      {"fit", to_json(*fit.snapped_fit)},
                      {"rms", to_json(fit.snapped_rms)}};
  }

  const fs::path dir = ensure_dir(a.out_dir);
  write_text((dir / "fit.json").string(), dump(out));
  for (const Dataset& d : data)
    if (!is_cyclic(d.mode)) write_csv(dir / ("fit_" + d.name + ".csv"), fitted_curve(d, fit.params));
  std::cout << dump(out);
  if (!fit.fit.converged) {
    emit_error("convergence_error", "equilibrium fit did not converge: " + fit.fit.status, kExitConvergence);
    return kExitConvergence;
  }
  return 0;
}

// --- fit-grid -------------------------------------------------------------------

struct GridArgs {
  std::string config;
  std::string out;
  unsigned threads = 0;
};

int run_fit_grid(const GridArgs& a) {
  const CampaignConfig c = load_campaign(a.config);
  const std::vector<Dataset> cells = c.load_datasets();
  for (const Dataset& d : cells)
    if (!is_cyclic(d.mode)) throw InputError("fit-grid: dataset '" + d.name + "' is not a cyclic dataset");
  ViscoFitOptions opts = c.visco_fit;
  if (a.threads > 0) opts.threads = a.threads;
  const std::vector<GridCellResult> res = fit_visco_grid(cells, c.equilibrium_params(), opts);

  CurveSeries table = grid_table(res);
  if (!c.material.empty()) table.set_meta("material", c.material);
  write_series(table, a.out, "csv");

  Json report = Json::array();
  bool any_ok = false;
  for (const auto& r : res) {
    any_ok = any_ok || r.ok;
    Json cell{{"name", r.name}, {"frequency_Hz", r.frequency}, {"amplitude", r.amplitude}, {"ok", r.ok}};
    if (r.ok) {
      cell["params"] = to_json(r.params);
      cell["rms_MPa"] = r.rms;
      cell["iterations"] = r.fit.iterations;
      cell["converged"] = r.fit.converged;
    } else {
      cell["error"] = r.error;
    }
    report.push_back(cell);
  }
  std::cout << dump(round_numbers(Json{{"cells", report}}));
  if (!any_ok) {
    emit_error("convergence_error", "no grid cell could be fitted", kExitConvergence);
    return kExitConvergence;
  }
  return 0;
}

// --- compare --------------------------------------------------------------------

struct CompareArgs {
  std::string config;
  std::string out_dir;
  std::vector<std::string> models;
};

CurveSeries classical_curve(const Dataset& d, const ClassicalParams& p) {
  CurveSeries s;
  s.mode = "compare_" + to_string(d.mode);
  s.set_meta("name", d.name);
  s.set_meta("model", model_name(p));
  const std::vector<double> m = predict_classical(p, d);
  if (d.mode == DatasetMode::uniaxial_eq) {
    s.columns = {"strain_log_axial", "strain_log_lateral", "stress_MPa", "model_MPa"};
    for (std::size_t i = 0; i < d.size(); ++i) s.rows.push_back({d.strain[i], d.lateral[i], d.stress[i], m[i]});
  } else {
    s.columns = {"strain", "stress_MPa", "model_MPa"};
    for (std::size_t i = 0; i < d.size(); ++i) s.rows.push_back({d.strain[i], d.stress[i], m[i]});
  }
  return s;
}

int run_compare(const CompareArgs& a) {
  const CampaignConfig c = load_campaign(a.config);
  std::vector<Dataset> data = c.load_datasets();
  std::erase_if(data, [](const Dataset& d) { return is_cyclic(d.mode); });
  std::vector<std::string> models = a.models.empty() ? c.classical_models : a.models;
  if (models.empty()) models = {"arruda-boyce", "mooney-rivlin", "ogden3"};

  const fs::path dir = ensure_dir(a.out_dir);
  Json table = Json::array();
  bool all_converged = true;
  for (const std::string& name : models) {
    const ClassicalKind kind = classical_kind_from_string(name);
    const ClassicalFit fit = fit_classical(kind, data, std::nullopt, c.lm);
    all_converged = all_converged && fit.fit.converged;
    table.push_back({{"model", to_string(kind)},
                     {"params", to_json(fit.params)},
                     {"rms", to_json(fit.rms)},
                     {"converged", fit.fit.converged},
                     {"iterations", fit.fit.iterations},
                     {"residual_norm", fit.fit.residual_norm}});
    for (const Dataset& d : data)
      write_csv(dir / ("compare_" + to_string(kind) + "_" + d.name + ".csv"), classical_curve(d, fit.params));
  }
  Json out{{"material", c.material}, {"models", table}};
  // The exponentiated Hencky model at the configured parameters, for reference.
  if (c.params_path || !c.material.empty()) out["ehm_rms"] = to_json(dataset_rms_eq(c.equilibrium_params(), data));
  out = round_numbers(out);
  write_text((dir / "compare.json").string(), dump(out));
  std::cout << dump(out);
  if (!all_converged) {
    emit_error("convergence_error", "at least one classical fit did not converge", kExitConvergence);
    return kExitConvergence;
  }
  return 0;
}

// --- synth ----------------------------------------------------------------------

struct SynthArgs {
  ParamSource params;
  std::optional<std::uint64_t> seed;
  double noise = 0.0;
  int points = 40;
  std::string out_dir;
  std::string visco_file;
  std::vector<double> frequencies;
  std::vector<double> amplitudes;
  std::string cyclic_mode = "shear";
  double pre_strain = 0.0;
  int samples = 50;
};

int run_synth(const SynthArgs& a) {
  if (!a.seed) throw InputError("--seed is required");
  if (!(a.noise >= 0.0)) throw InputError("--noise must be >= 0");
  const EhmParams p = a.params.resolve();
  const std::string label = a.params.label();
  const fs::path dir = ensure_dir(a.out_dir);
  auto tag = [&](CurveSeries& s) {
    s.set_meta("material", label);
    s.set_meta("seed", std::to_string(*a.seed));
    s.set_meta("noise", format_number(a.noise));
  };

  SynthOptions so;
  so.points = a.points;
  so.noise = a.noise;
  so.seed = *a.seed;
  Json files = Json::array();
  for (Dataset& d : synth_equilibrium_campaign(p, so)) {
    d.density = label;
    CurveSeries s = dataset_to_series(d);
    tag(s);
    write_csv(dir / (d.name + ".csv"), s);
    files.push_back({{"path", d.name + ".csv"}, {"mode", to_string(d.mode)}, {"name", d.name}});
  }

  if (!a.visco_file.empty()) {
    if (a.frequencies.empty() || a.amplitudes.empty())
      throw InputError("cyclic synthesis needs --frequencies and --amplitudes");
    const ViscoParams vp = visco_params_from_json(read_json(a.visco_file));
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < a.frequencies.size(); ++i)
      for (std::size_t j = 0; j < a.amplitudes.size(); ++j, ++k) {
        LoadProgram lp;
        lp.mode = load_mode_from_string(a.cyclic_mode);
        lp.frequency = a.frequencies[i];
        lp.amplitude = a.amplitudes[j];
        lp.pre_strain = a.pre_strain;
        validate(lp);
        Dataset d = synth_cyclic_cell(lp, p, vp, a.samples, a.noise, *a.seed + 1 + k);
        d.name = "cyclic_f" + std::to_string(i) + "_a" + std::to_string(j);
        d.density = label;
        CurveSeries s = dataset_to_series(d);
        tag(s);
        write_csv(dir / (d.name + ".csv"), s);
        files.push_back({{"path", d.name + ".csv"}, {"mode", to_string(d.mode)}, {"name", d.name}});
      }
  }
  std::cout << dump(Json{{"material", label}, {"seed", *a.seed}, {"datasets", files}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponentiated Hencky model toolkit: sweeps, cyclic simulation, calibration"};
  app.require_subcommand(1);

  EvalArgs eval;
  auto* c_eval = app.add_subcommand("eval", "stress at a single deformation state (JSON)");
  eval.params.add_to(c_eval);
  c_eval->add_option("--gamma", eval.gamma, "simple shear amount");
  c_eval->add_option("--stretches", eval.stretches, "principal stretches l1 l2 l3")->expected(3);
  c_eval->add_option("--F", eval.f, "deformation gradient, 9 values row by row")->expected(9);

  SweepArgs sw;
  auto* c_sweep = app.add_subcommand("sweep", "tabulate a deformation mode over a strain grid");
  sw.params.add_to(c_sweep);
  c_sweep->add_option("--mode", sw.mode, "shear | uniaxial | pseudo_hydro")->required();
  c_sweep->add_option("--from", sw.from, "first grid value (gamma or log axial stretch)");
  c_sweep->add_option("--to", sw.to, "last grid value")->required();
  c_sweep->add_option("--points", sw.points, "number of grid points");
  c_sweep->add_option("--out", sw.out, "output file, - for stdout");
  c_sweep->add_option("--format", sw.format)->check(CLI::IsMember({"csv", "json"}));

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "cyclic viscoelastic simulation; prints a dissipation summary");
  c_sim->add_option("--config", sim.config, "campaign file with load_program and visco")->required();
  c_sim->add_option("--out", sim.out, "time series output file")->required();
  c_sim->add_option("--format", sim.format)->check(CLI::IsMember({"csv", "json"}));

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "joint equilibrium fit of a campaign");
  c_fit->add_option("--config", fit.config, "campaign file")->required();
  c_fit->add_option("--out-dir", fit.out_dir, "directory for fit.json and fitted curves")->required();

  GridArgs grid;
  auto* c_grid = app.add_subcommand("fit-grid", "per-cell viscoelastic fits of cyclic datasets");
  c_grid->add_option("--config", grid.config, "campaign file listing cyclic datasets")->required();
  c_grid->add_option("--out", grid.out, "parameter-surface CSV")->required();
  c_grid->add_option("--threads", grid.threads, "cells fitted concurrently (default from config)");

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "fit classical models to the campaign datasets");
  c_cmp->add_option("--config", cmp.config, "campaign file")->required();
  c_cmp->add_option("--out-dir", cmp.out_dir, "directory for compare.json and curves")->required();
  c_cmp->add_option("--models", cmp.models, "arruda-boyce, mooney-rivlin, ogden3")->delimiter(',');

  SynthArgs syn;
  auto* c_syn = app.add_subcommand("synth", "write a synthetic campaign generated from known parameters");
  syn.params.add_to(c_syn);
  c_syn->add_option("--seed", syn.seed, "noise seed (required)")->required();
  c_syn->add_option("--noise", syn.noise, "multiplicative Gaussian noise level, e.g. 0.01");
  c_syn->add_option("--points", syn.points, "points per equilibrium dataset");
  c_syn->add_option("--out-dir", syn.out_dir, "output directory")->required();
  c_syn->add_option("--visco", syn.visco_file, "viscoelastic parameter file; enables cyclic cells");
  c_syn->add_option("--frequencies", syn.frequencies, "cyclic frequencies (Hz)")->delimiter(',');
  c_syn->add_option("--amplitudes", syn.amplitudes, "cyclic amplitudes")->delimiter(',');
  c_syn->add_option("--cyclic-mode", syn.cyclic_mode)->check(CLI::IsMember({"shear", "uniaxial"}));
  c_syn->add_option("--pre-strain", syn.pre_strain, "cyclic pre-strain");
  c_syn->add_option("--samples", syn.samples, "samples per synthetic cycle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage_error", e.what(), kExitInput);
    return kExitInput;
  }

  try {
    if (*c_eval) return run_eval(eval);
    if (*c_sweep) return run_sweep(sw);
    if (*c_sim) return run_simulate(sim);
    if (*c_fit) return run_fit(fit);
    if (*c_grid) return run_fit_grid(grid);
    if (*c_cmp) return run_compare(cmp);
    if (*c_syn) return run_synth(syn);
  } catch (const InputError& e) {
    emit_error("input_error", e.what(), kExitInput);
    return kExitInput;
  } catch (const DomainError& e) {
    emit_error("domain_error", e.what(), kExitInput);
    return kExitInput;
  } catch (const ConvergenceError& e) {
    emit_error("convergence_error", e.what(), kExitConvergence);
    return kExitConvergence;
  } catch (const InvariantError& e) {
    emit_error("invariant_error", e.what(), kExitInvariant);
    return kExitInvariant;
  } catch (const std::exception& e) {
    emit_error("internal_error", e.what(), kExitInvariant);
    return kExitInvariant;
  }
  return kExitInvariant;
}
