#include "hencky/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>

#include "hencky/drivers.hpp"
#include "hencky/error.hpp"
#include "hencky/roots.hpp"

namespace hencky {

std::string to_string(DatasetMode m) {
  switch (m) {
    case DatasetMode::shear_eq: return "shear_eq";
    case DatasetMode::uniaxial_eq: return "uniaxial_eq";
    case DatasetMode::pseudo_hydro_eq: return "pseudo_hydro_eq";
    case DatasetMode::cyclic_shear: return "cyclic_shear";
    case DatasetMode::cyclic_uniaxial: return "cyclic_uniaxial";
  }
  return "?";
}

DatasetMode dataset_mode_from_string(const std::string& s) {
  if (s == "shear_eq") return DatasetMode::shear_eq;
  if (s == "uniaxial_eq") return DatasetMode::uniaxial_eq;
  if (s == "pseudo_hydro_eq") return DatasetMode::pseudo_hydro_eq;
  if (s == "cyclic_shear") return DatasetMode::cyclic_shear;
  if (s == "cyclic_uniaxial") return DatasetMode::cyclic_uniaxial;
  throw InputError("unknown dataset mode '" + s + "'");
}

bool is_cyclic(DatasetMode m) { return m == DatasetMode::cyclic_shear || m == DatasetMode::cyclic_uniaxial; }

void validate(const Dataset& d) {
  const std::string who = "dataset '" + d.name + "': ";
  if (d.stress.empty()) throw InputError(who + "no rows");
  if (d.strain.size() != d.stress.size()) throw InputError(who + "strain and stress lengths differ");
  if (d.mode == DatasetMode::uniaxial_eq && d.lateral.size() != d.stress.size())
    throw InputError(who + "uniaxial_eq requires a lateral strain column of equal length");
  if (is_cyclic(d.mode) && d.time.size() != d.stress.size())
    throw InputError(who + "cyclic datasets require a time column of equal length");
  if (!(std::isfinite(d.weight) && d.weight >= 0.0)) throw InputError(who + "weight must be >= 0");
  auto all_finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!all_finite(d.strain) || !all_finite(d.stress) || !all_finite(d.lateral) || !all_finite(d.time))
    throw InputError(who + "non-finite value");
  if (is_cyclic(d.mode)) {
    if (!(d.frequency > 0.0)) throw InputError(who + "cyclic dataset needs frequency > 0");
  } else {
    for (std::size_t i = 1; i < d.strain.size(); ++i)
      if ((d.strain[i] - d.strain[i - 1]) * (d.strain.back() - d.strain.front()) <= 0.0)
        throw InputError(who + "strain is not strictly monotone at row " + std::to_string(i + 1));
  }
}

// ---------------------------------------------------------------------------

std::vector<double> to_vector(const EhmParams& p) {
  return {p.mu, p.k, p.kappa, p.k_hat, p.kappa1, p.k_tilde, p.m};
}

EhmParams ehm_from_vector(std::span<const double> v) {
  if (v.size() != 7) throw InputError("ehm_from_vector: expected 7 values");
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6]};
}

std::vector<ParamSpec> default_ehm_bounds() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{"mu", 0.0, inf},     {"k", 0.0, inf},       {"kappa", 0.0, inf}, {"k_hat", 0.0, inf},
          {"kappa1", 0.0, inf}, {"k_tilde", 0.0, inf}, {"m", 2.0, inf}};
}

namespace {

std::string format_compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double rms_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return v.empty() ? 0.0 : std::sqrt(s / v.size());
}

double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return a.empty() ? 0.0 : std::sqrt(s / a.size());
}

double normalization(const Dataset& d) {
  const double rms = rms_of(d.stress);
  if (!(rms > 0.0)) throw InputError("dataset '" + d.name + "': measured stress is identically zero");
  return std::sqrt(d.weight) / rms;
}

}  // namespace

std::vector<double> predict_eq(const EhmParams& p, const Dataset& d) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    switch (d.mode) {
      case DatasetMode::shear_eq: out[i] = shear_kirchhoff(d.strain[i], p); break;
      case DatasetMode::uniaxial_eq:
        if (d.lateral.size() != d.size())
          throw InputError("dataset '" + d.name + "': missing lateral strain column");
        out[i] = uniaxial_stress_measured({d.strain[i], d.lateral[i]}, p).s_dev;
        break;
      case DatasetMode::pseudo_hydro_eq: out[i] = pseudo_hydro(d.strain[i], p).sigma11; break;
      default: throw InputError("predict_eq: cyclic dataset '" + d.name + "'");
    }
  }
  return out;
}

std::vector<double> residuals_eq(const EhmParams& p, std::span<const Dataset> datasets) {
  std::vector<double> r;
  for (const Dataset& d : datasets) {
    if (d.weight == 0.0 || is_cyclic(d.mode)) continue;
    const double f = normalization(d);
    if (d.mode == DatasetMode::uniaxial_eq) {
      if (d.lateral.size() != d.size())
        throw InputError("dataset '" + d.name + "': missing lateral strain column");
      for (std::size_t i = 0; i < d.size(); ++i) {
        const UniaxialStress s = uniaxial_stress_measured({d.strain[i], d.lateral[i]}, p);
        r.push_back((s.s_dev - d.stress[i]) * f);
        r.push_back((s.s_sph - d.stress[i]) * f);
      }
    } else {
      const std::vector<double> model = predict_eq(p, d);
      for (std::size_t i = 0; i < d.size(); ++i) r.push_back((model[i] - d.stress[i]) * f);
    }
  }
  return r;
}

std::vector<DatasetRms> dataset_rms_eq(const EhmParams& p, std::span<const Dataset> datasets) {
  std::vector<DatasetRms> out;
  for (const Dataset& d : datasets) {
    if (is_cyclic(d.mode)) continue;
    out.push_back({d.name, rms_diff(predict_eq(p, d), d.stress)});
  }
  return out;
}

EhmParams initial_guess_from_moduli(const ModuliGuess& g) {
  return {g.mu, 1e-3, g.kappa, 1e-3, g.kappa1, 1e-3, 2.0 + 1e-3};
}

namespace {

bool any_active(std::span<const Dataset> datasets) {
  return std::any_of(datasets.begin(), datasets.end(),
                     [](const Dataset& d) { return d.weight > 0.0 && !is_cyclic(d.mode); });
}

}  // namespace

namespace {

// LM over the parameters listed in `free`; the others keep their values in `full`.
FitResult fit_subset(std::vector<double>& full, const std::vector<int>& free, std::span<const Dataset> datasets,
                     const std::vector<ParamSpec>& bounds, const LmOptions& lm) {
  FitProblem problem;
  std::vector<double> start;
  for (int i : free) {
    problem.params.push_back(bounds[i]);
    start.push_back(full[i]);
  }
  const std::vector<double> base = full;
  problem.residuals = [&](std::span<const double> x, std::vector<double>& r) {
    std::vector<double> v = base;
    for (std::size_t j = 0; j < free.size(); ++j) v[free[j]] = x[j];
    r = residuals_eq(ehm_from_vector(v), datasets);
  };
  FitResult res = lm_fit(problem, start, lm);
  for (std::size_t j = 0; j < free.size(); ++j) full[free[j]] = res.params[j];
  return res;
}

std::vector<Dataset> active_of(std::span<const Dataset> datasets, std::initializer_list<DatasetMode> modes) {
  std::vector<Dataset> out;
  for (const Dataset& d : datasets)
    if (d.weight > 0.0 && std::find(modes.begin(), modes.end(), d.mode) != modes.end()) out.push_back(d);
  return out;
}

}  // namespace

EquilibriumFit fit_equilibrium(std::span<const Dataset> datasets, const EquilibriumFitOptions& opts) {
  for (const Dataset& d : datasets) validate(d);
  if (!any_active(datasets))
    throw InputError("fit_equilibrium: no dataset with positive weight; nothing to fit");
  if (opts.bounds.size() != 7) throw InputError("fit_equilibrium: expected 7 parameter bounds");

  EquilibriumFit out;
  std::vector<double> x = to_vector(opts.initial);
  if (opts.staged) {
    const std::vector<Dataset> shear = active_of(datasets, {DatasetMode::shear_eq});
    const std::vector<Dataset> vol = active_of(datasets, {DatasetMode::uniaxial_eq, DatasetMode::pseudo_hydro_eq});
    if (!shear.empty()) {
      const FitResult r = fit_subset(x, {0, 1}, shear, opts.bounds, opts.lm);
      out.stages.emplace_back("shear: mu, k", r.residual_norm);
    }
    if (!vol.empty()) {
      std::vector<double> best;
      double best_norm = std::numeric_limits<double>::infinity();
      for (double m0 : opts.m_starts) {
        std::vector<double> trial = x;
        trial[6] = m0;
        try {
          fit_subset(trial, {2, 3, 4, 5}, vol, opts.bounds, opts.lm);
          const FitResult r = fit_subset(trial, {2, 3, 4, 5, 6}, vol, opts.bounds, opts.lm);
          out.stages.emplace_back("volumetric from m = " + format_compact(m0), r.residual_norm);
          if (r.residual_norm < best_norm) {
            best_norm = r.residual_norm;
            best = trial;
          }
        } catch (const Error& e) {
          out.stages.emplace_back("volumetric from m = " + format_compact(m0) + " failed: " + e.what(),
                                  std::numeric_limits<double>::quiet_NaN());
        }
      }
      if (!best.empty()) x = best;
    }
  }

  FitProblem problem;
  problem.params = opts.bounds;
  problem.residuals = [&](std::span<const double> v, std::vector<double>& r) {
    r = residuals_eq(ehm_from_vector(v), datasets);
  };
  out.fit = lm_fit(problem, x, opts.lm);
  out.stages.emplace_back("joint", out.fit.residual_norm);
  out.params = ehm_from_vector(out.fit.params);
  out.rms = dataset_rms_eq(out.params, datasets);

  if (opts.snap_m) {
    std::vector<double> snapped = out.fit.params;
    snapped[6] = std::max(2.0, std::round(out.params.m));
    FitResult r = fit_subset(snapped, {0, 1, 2, 3, 4, 5}, datasets, opts.bounds, opts.lm);
    r.names.push_back("m");
    r.params.push_back(snapped[6]);
    out.snapped_params = ehm_from_vector(snapped);
    out.snapped_rms = dataset_rms_eq(*out.snapped_params, datasets);
    out.snapped_fit = std::move(r);
  }
  return out;
}

// ---------------------------------------------------------------------------

LoadProgram load_program_for(const Dataset& d, const ViscoFitOptions& opts) {
  LoadProgram lp;
  lp.mode = d.mode == DatasetMode::cyclic_uniaxial ? LoadMode::uniaxial : LoadMode::shear;
  lp.amplitude = d.amplitude;
  lp.frequency = d.frequency;
  lp.pre_strain = d.pre_strain;
  lp.pre_strain_relaxed = d.pre_strain_relaxed;
  lp.cycles = opts.cycles;
  lp.steps_per_cycle = opts.steps_per_cycle;
  return lp;
}

namespace {

// Linear interpolation of the final simulated cycle at phases t mod period.
std::vector<double> sample_final_cycle(const CurveSeries& sim, int steps_per_cycle, double period,
                                       std::span<const double> times) {
  const std::size_t first = sim.rows.size() - 1 - steps_per_cycle;
  const double dt = period / steps_per_cycle;
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) {
    double phase = std::fmod(t, period);
    if (phase < 0.0) phase += period;
    const double u = phase / dt;
    auto j = static_cast<std::size_t>(std::floor(u));
    if (j >= static_cast<std::size_t>(steps_per_cycle)) j = steps_per_cycle - 1;
    const double w = u - static_cast<double>(j);
    const double s0 = sim.rows[first + j][2];
    const double s1 = sim.rows[first + j + 1][2];
    out.push_back(w == 0.0 ? s0 : s0 + w * (s1 - s0));
  }
  return out;
}

}  // namespace

std::vector<double> predict_cyclic(const Dataset& d, const EhmParams& eq, const ViscoParams& vp,
                                   const ViscoFitOptions& opts) {
  const LoadProgram lp = load_program_for(d, opts);
  const CurveSeries sim = simulate_cyclic(lp, eq, vp, opts.update);
  return sample_final_cycle(sim, lp.steps_per_cycle, 1.0 / lp.frequency, d.time);
}

GridCellResult fit_visco_cell(const Dataset& d, const EhmParams& eq, const ViscoFitOptions& opts) {
  GridCellResult cell;
  cell.name = d.name;
  cell.frequency = d.frequency;
  cell.amplitude = d.amplitude;
  cell.params = opts.initial;
  try {
    validate(d);
    if (!is_cyclic(d.mode)) throw InputError("fit_visco_cell: dataset '" + d.name + "' is not cyclic");
    const double f = normalization(d);
    constexpr double inf = std::numeric_limits<double>::infinity();
    FitProblem problem;
    problem.params = {{"mu_A", 0.0, inf}, {"k_A", 0.0, inf}, {"mu_B", 0.0, inf}};
    auto make = [&](std::span<const double> x) {
      ViscoParams vp = opts.initial;
      vp.mu_A = x[0];
      vp.k_A = x[1];
      vp.mu_B = x[2];
      return vp;
    };
    problem.residuals = [&](std::span<const double> x, std::vector<double>& r) {
      const std::vector<double> model = predict_cyclic(d, eq, make(x), opts);
      r.resize(model.size());
      for (std::size_t i = 0; i < model.size(); ++i) r[i] = (model[i] - d.stress[i]) * f;
    };
    const std::vector<double> start{opts.initial.mu_A, opts.initial.k_A, opts.initial.mu_B};
    cell.fit = lm_fit(problem, start, opts.lm);
    cell.params = make(cell.fit.params);
    cell.rms = rms_diff(predict_cyclic(d, eq, cell.params, opts), d.stress);
    cell.ok = true;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

std::vector<GridCellResult> fit_visco_grid(std::span<const Dataset> cells, const EhmParams& eq,
                                           const ViscoFitOptions& opts) {
  std::vector<GridCellResult> out(cells.size());
  const std::size_t batch = std::max(1u, opts.threads);
  for (std::size_t start = 0; start < cells.size(); start += batch) {
    const std::size_t stop = std::min(cells.size(), start + batch);
    if (batch == 1) {
      out[start] = fit_visco_cell(cells[start], eq, opts);
      continue;
    }
    std::vector<std::future<GridCellResult>> jobs;
    for (std::size_t i = start; i < stop; ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] { return fit_visco_cell(cells[i], eq, opts); }));
    for (std::size_t i = start; i < stop; ++i) out[i] = jobs[i - start].get();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(ClassicalKind k) {
  switch (k) {
    case ClassicalKind::arruda_boyce: return "arruda-boyce";
    case ClassicalKind::mooney_rivlin: return "mooney-rivlin";
    case ClassicalKind::ogden3: return "ogden3";
  }
  return "?";
}

ClassicalKind classical_kind_from_string(const std::string& s) {
  if (s == "arruda-boyce" || s == "arruda_boyce") return ClassicalKind::arruda_boyce;
  if (s == "mooney-rivlin" || s == "mooney_rivlin") return ClassicalKind::mooney_rivlin;
  if (s == "ogden3" || s == "ogden") return ClassicalKind::ogden3;
  throw InputError("unknown classical model '" + s + "' (expected arruda-boyce, mooney-rivlin, ogden3)");
}

ClassicalParams default_classical_guess(ClassicalKind k) {
  switch (k) {
    case ClassicalKind::arruda_boyce: return ArrudaBoyce{0.2, 3.0, 2.0};
    case ClassicalKind::mooney_rivlin: return MooneyRivlin{0.1, 0.01, 2.0};
    case ClassicalKind::ogden3: return Ogden3{{0.1, 0.05, -0.01}, {2.0, 4.0, -2.0}, 2.0};
  }
  throw InputError("default_classical_guess: unknown model");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ParamSpec> classical_specs(ClassicalKind k) {
  switch (k) {
    case ClassicalKind::arruda_boyce:
      return {{"mu", 0.0, kInf}, {"lambda_lock", 1.0, kInf}, {"kappa_vol", 0.0, kInf}};
    case ClassicalKind::mooney_rivlin:
      return {{"c10", 0.0, kInf}, {"c01", -kInf, kInf}, {"kappa_vol", 0.0, kInf}};
    case ClassicalKind::ogden3:
      return {{"mu_1", -kInf, kInf},    {"mu_2", -kInf, kInf},    {"mu_3", -kInf, kInf},
              {"alpha_1", -kInf, kInf}, {"alpha_2", -kInf, kInf}, {"alpha_3", -kInf, kInf},
              {"kappa_vol", 0.0, kInf}};
  }
  return {};
}

std::vector<double> classical_vector(const ClassicalParams& p) {
  struct {
    std::vector<double> operator()(const ArrudaBoyce& a) const { return {a.mu, a.lambda_lock, a.kappa_vol}; }
    std::vector<double> operator()(const MooneyRivlin& a) const { return {a.c10, a.c01, a.kappa_vol}; }
    std::vector<double> operator()(const Ogden3& a) const {
      return {a.mu_p[0], a.mu_p[1], a.mu_p[2], a.alpha_p[0], a.alpha_p[1], a.alpha_p[2], a.kappa_vol};
    }
  } v;
  return std::visit(v, p);
}

ClassicalParams classical_from_vector(ClassicalKind k, std::span<const double> x) {
  switch (k) {
    case ClassicalKind::arruda_boyce: return ArrudaBoyce{x[0], x[1], x[2]};
    case ClassicalKind::mooney_rivlin: return MooneyRivlin{x[0], x[1], x[2]};
    case ClassicalKind::ogden3: return Ogden3{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}, x[6]};
  }
  throw InputError("classical_from_vector: unknown model");
}

ClassicalKind kind_of(const ClassicalParams& p) {
  return static_cast<ClassicalKind>(p.index());
}

}  // namespace

std::vector<double> predict_classical(const ClassicalParams& p, const Dataset& d) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    switch (d.mode) {
      case DatasetMode::shear_eq:
        out[i] = cauchy_classical(DefGrad::simple_shear(d.strain[i]), p)(0, 1);
        break;
      case DatasetMode::uniaxial_eq: {
        const double l2 = std::exp(d.lateral.at(i));
        const SymTensor3 s = cauchy_classical(DefGrad::diag(std::exp(d.strain[i]), l2, l2), p);
        out[i] = s(0, 0) - s(1, 1);
        break;
      }
      case DatasetMode::pseudo_hydro_eq:
        out[i] = cauchy_classical(DefGrad::diag(std::exp(d.strain[i]), 1.0, 1.0), p)(0, 0);
        break;
      default: throw InputError("predict_classical: cyclic dataset '" + d.name + "'");
    }
  }
  return out;
}

ClassicalFit fit_classical(ClassicalKind kind, std::span<const Dataset> datasets,
                           const std::optional<ClassicalParams>& initial, const LmOptions& lm) {
  for (const Dataset& d : datasets) validate(d);
  if (!any_active(datasets)) throw InputError("fit_classical: no dataset with positive weight");
  const ClassicalParams start = initial ? *initial : default_classical_guess(kind);
  if (kind_of(start) != kind) throw InputError("fit_classical: initial guess is for another model");
  validate(start);

  FitProblem problem;
  problem.params = classical_specs(kind);
  problem.residuals = [&](std::span<const double> x, std::vector<double>& r) {
    const ClassicalParams p = classical_from_vector(kind, x);
    validate(p);
    r.clear();
    for (const Dataset& d : datasets) {
      if (d.weight == 0.0 || is_cyclic(d.mode)) continue;
      const double f = normalization(d);
      const std::vector<double> model = predict_classical(p, d);
      for (std::size_t i = 0; i < d.size(); ++i) r.push_back((model[i] - d.stress[i]) * f);
    }
  };
  ClassicalFit out{start, lm_fit(problem, classical_vector(start), lm), {}};
  out.params = classical_from_vector(kind, out.fit.params);
  for (const Dataset& d : datasets)
    if (!is_cyclic(d.mode)) out.rms.push_back({d.name, rms_diff(predict_classical(out.params, d), d.stress)});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void add_noise(std::vector<double>& v, double level, std::mt19937_64& rng) {
  if (level == 0.0) return;
  std::normal_distribution<double> n(0.0, 1.0);
  for (double& x : v) x *= 1.0 + level * n(rng);
}

}  // namespace

std::vector<Dataset> synth_equilibrium_campaign(const EhmParams& p, const SynthOptions& opts) {
  if (opts.points < 2) throw InputError("synth_equilibrium_campaign: need at least 2 points");
  std::mt19937_64 rng(opts.seed);
  const int n = opts.points;

  Dataset shear{DatasetMode::shear_eq, "shear"};
  for (int i = 1; i <= n; ++i) {
    const double g = opts.shear_max * i / n;
    shear.strain.push_back(g);
    shear.stress.push_back(shear_kirchhoff(g, p));
  }

  Dataset uni{DatasetMode::uniaxial_eq, "uniaxial"};
  for (int i = 1; i <= n; ++i) {
    const UniaxialSolution s = uniaxial_solve(opts.uniaxial_min_log * i / n, p);
    uni.strain.push_back(s.state.log_lambda1);
    uni.lateral.push_back(s.state.log_lambda2);
    uni.stress.push_back(s.stress);
  }

  // Axial strain at which |sigma_11| reaches the requested level.
  auto excess = [&](double l) {
    const double s = pseudo_hydro(l, p).sigma11;
    return std::isfinite(s) ? s + opts.pseudo_hydro_stress_max : -1e300;
  };
  double lo = -0.05;
  while (excess(lo) > 0.0 && lo > -5.0) lo *= 1.5;
  const double l_max = brent(excess, lo, -1e-9, 1e-12 * opts.pseudo_hydro_stress_max).x;
  Dataset hydro{DatasetMode::pseudo_hydro_eq, "pseudo_hydro"};
  for (int i = 1; i <= n; ++i) {
    const double l = l_max * i / n;
    hydro.strain.push_back(l);
    hydro.stress.push_back(pseudo_hydro(l, p).sigma11);
  }

  add_noise(shear.stress, opts.noise, rng);
  add_noise(uni.stress, opts.noise, rng);
  add_noise(hydro.stress, opts.noise, rng);
  return {shear, uni, hydro};
}

Dataset synth_cyclic_cell(const LoadProgram& lp, const EhmParams& eq, const ViscoParams& vp, int samples,
                          double noise, std::uint64_t seed) {
  if (samples < 2) throw InputError("synth_cyclic_cell: need at least 2 samples");
  const CurveSeries sim = simulate_cyclic(lp, eq, vp);
  const double period = 1.0 / lp.frequency;

  Dataset d;
  d.mode = lp.mode == LoadMode::shear ? DatasetMode::cyclic_shear : DatasetMode::cyclic_uniaxial;
  d.frequency = lp.frequency;
  d.amplitude = lp.amplitude;
  d.pre_strain = lp.pre_strain;
  d.pre_strain_relaxed = lp.pre_strain_relaxed;
  const double t_end = sim.rows.back()[0];
  for (int k = 0; k < samples; ++k) {
    const double phase = period * k / samples;
    d.time.push_back(t_end - period + phase);
    d.strain.push_back(lp.pre_strain + lp.amplitude * std::sin(2.0 * std::numbers::pi * phase / period));
  }
  d.stress = sample_final_cycle(sim, lp.steps_per_cycle, period, d.time);
  std::mt19937_64 rng(seed);
  add_noise(d.stress, noise, rng);
  return d;
}

}  // namespace hencky
