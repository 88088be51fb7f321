// Acceptance checks. One PASS/FAIL line per criterion.
//
//   hencky_acceptance [--only N] [--update-golden]

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hencky/calibration.hpp"
#include "hencky/drivers.hpp"
#include "hencky/error.hpp"
#include "hencky/io.hpp"
#include "hencky/roots.hpp"
#include "hencky/viscoelastic.hpp"

namespace fs = std::filesystem;
using namespace hencky;

namespace {

const Tdm kGrades[] = {Tdm::d500, Tdm::d600, Tdm::d800};

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// --- 1: stress is the gradient of the energy ---------------------------------

// 5-point central difference with a step scaled to the local logarithmic
// slope of W, so exponentially steep states are resolved as well as mild ones.
double gradient_component(const SymTensor3& l, int i, int j, const EhmParams& p) {
  SymTensor3 e = SymTensor3::zero();
  e(i, j) = 1.0;  // symmetric storage: off-diagonal moves both (i,j) and (j,i)
  auto w = [&](double h) { return energy_ehm(l + e * h, p); };
  const double d = 1e-7;
  const double slope = std::abs(std::log(w(d)) - std::log(w(-d))) / (2 * d);
  const double h = 1e-3 / std::max(1.0, slope);
  return (-w(2 * h) + 8 * w(h) - 8 * w(-h) + w(-2 * h)) / (12 * h);
}

Outcome criterion1() {
  Clock clock;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), radius(0.0, 1.0);
  double worst = 0.0;
  int redrawn = 0;
  for (Tdm g : kGrades) {
    const EhmParams p = reference_params(g);
    int accepted = 0;
    while (accepted < 100) {
      SymTensor3 l(u(rng), u(rng), u(rng), u(rng), u(rng), u(rng));
      l *= radius(rng) / l.norm();
      const SymTensor3 tau = kirchhoff_ehm(l, p);
      // Energies that overflow a double cannot be differentiated numerically.
      if (!std::isfinite(energy_ehm(l * 1.001, p)) || !tau.is_finite()) {
        ++redrawn;
        continue;
      }
      ++accepted;
      double err2 = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          const double expected = (i == j ? 1.0 : 2.0) * tau(i, j);
          const double fd = gradient_component(l, i, j, p);
          err2 += (fd - expected) * (fd - expected) / (i == j ? 1.0 : 2.0);
        }
      worst = std::max(worst, std::sqrt(err2) / std::max(tau.norm(), 1e-300));
    }
  }
  const double t = clock.seconds();
  return {worst <= 1e-6 && t < 1.0, "max relative error " + fmt("%.2e", worst) + " over 300 states (" +
                                        std::to_string(redrawn) + " overflowing draws replaced), " +
                                        fmt("%.3f", t) + " s"};
}

// --- 2: closed forms against the general path ----------------------------------

Outcome criterion2() {
  Clock clock;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  auto rotation = [&] {
    double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    const double s = std::sqrt(w * w + x * x + y * y + z * z);
    w /= s, x /= s, y /= s, z /= s;
    return Tensor3({1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w), 2 * (x * y + z * w),
                    1 - 2 * (x * x + z * z), 2 * (y * z - x * w), 2 * (x * z - y * w), 2 * (y * z + x * w),
                    1 - 2 * (x * x + y * y)});
  };
  double shear = 0.0, dev = 0.0, sph = 0.0, ratio = 0.0;
  for (Tdm g : kGrades) {
    const EhmParams p = reference_params(g);
    for (int i = 0; i < 200; ++i) {
      const double s = double(i) / 199.0;

      const double gamma = -2.0 + 4.0 * s;
      const double general = kirchhoff_ehm(log_right_stretch(DefGrad::simple_shear(gamma)), p)(0, 1);
      shear = std::max(shear, std::abs(shear_kirchhoff(gamma, p) - general) / std::max(std::abs(general), p.mu));

      // Uniaxial states F = R diag(l1, l2, l2) with the traction-free lateral
      // strain. Arbitrary (l1, l2) pairs reach pressures of 1e6 MPa, where
      // dev(sigma) of the general path itself loses digits to cancellation.
      const double l1 = -1.2 + 1.5 * s;
      const double l2 = uniaxial_solve(l1, p).state.log_lambda2;
      const DefGrad fu(rotation() * Tensor3::diag(std::exp(l1), std::exp(l2), std::exp(l2)));
      const SymTensor3 su = cauchy_ehm(log_right_stretch(fu), p);
      const UniaxialStress u = uniaxial_stress_measured({l1, l2}, p);
      const double gd = 1.5 * dev3(su)(0, 0), gs = su.trace();
      dev = std::max(dev, std::abs(u.s_dev - gd) / std::max(std::abs(gd), p.mu));
      sph = std::max(sph, std::abs(u.s_sph - gs) / std::max(std::abs(gs), p.mu));

      // Pseudo-hydrostatic ratio on a grid that avoids the undefined point 0.
      const double lp = -0.6 + 0.9 * (i + 0.5) / 200.0;
      const DefGrad fp(rotation() * Tensor3::diag(std::exp(lp), 1.0, 1.0));
      const SymTensor3 sp = cauchy_ehm(log_right_stretch(fp), p);
      const double gr = 1.5 * dev3(sp)(0, 0) / (sp.trace() / 3.0);
      const auto r = pseudo_hydro(lp, p).ratio;
      ratio = std::max(ratio, r ? std::abs(*r - gr) / std::max(std::abs(gr), 1.0) : INFINITY);
    }
  }
  const double t = clock.seconds();
  const double worst = std::max({shear, dev, sph, ratio});
  return {worst <= 1e-10 && t < 1.0, "max relative deviation: shear " + fmt("%.1e", shear) + ", s_dev " +
                                         fmt("%.1e", dev) + ", s_sph " + fmt("%.1e", sph) + ", ratio " +
                                         fmt("%.1e", ratio) + " (3 x 200 points each), " + fmt("%.3f", t) + " s"};
}

// --- 3: pseudo-hydrostatic validity window ---------------------------------------

Outcome criterion3() {
  const EhmParams p = reference_params(Tdm::d500);
  auto excess = [&](double l) { return std::abs(*pseudo_hydro(l, p).ratio) - 0.05; };
  // |ratio| -> 2 mu / kappa > 0.05 at zero strain and decays with |log det F|.
  const double lo = std::exp(brent(excess, -1.0, -1e-6, 1e-15).x);
  const double hi = std::exp(brent(excess, 1e-6, 1.0, 1e-15).x);
  // Same window for the deviatoric-to-pressure quotient taken literally.
  auto literal = [&](double l) {
    const SymTensor3 s = cauchy_ehm(SymTensor3::diag(l, 0.0, 0.0), p);
    return std::abs(dev3(s)(0, 0) / (s.trace() / 3.0)) - 0.05;
  };
  const double llo = std::exp(brent(literal, -1.0, -1e-6, 1e-15).x);
  const double lhi = std::exp(brent(literal, 1e-6, 1.0, 1e-15).x);
  const bool ok_lo = std::abs(lo - 0.85) <= 0.02, ok_hi = std::abs(hi - 1.2) <= 0.02;
  return {ok_lo && ok_hi, "|s11/p| >= 0.05 for det F in (" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) +
                              "); lower endpoint " + (ok_lo ? "within" : "outside") + " 0.85 +- 0.02, upper " +
                              (ok_hi ? "within" : "outside") + " 1.2 +- 0.02 (literal dev(sigma)_11/p gives (" +
                              fmt("%.4f", llo) + ", " + fmt("%.4f", lhi) + "))"};
}

// --- 4: infinitesimal moduli ----------------------------------------------------

Outcome criterion4() {
  const double h = 1e-6;
  double worst = 0.0;
  std::string detail;
  for (Tdm g : kGrades) {
    const EhmParams p = reference_params(g);
    if (!(p.m > 2.0)) continue;
    auto tau12 = [&](double gamma) { return kirchhoff_ehm(log_right_stretch(DefGrad::simple_shear(gamma)), p)(0, 1); };
    auto pressure = [&](double x) {
      const SymTensor3 l = log_right_stretch(DefGrad::diag(std::exp(x / 3), std::exp(x / 3), std::exp(x / 3)));
      return kirchhoff_ehm(l, p).trace() / 3.0;
    };
    const double mu = (tau12(h) - tau12(-h)) / (2 * h);
    const double kappa = (pressure(h) - pressure(-h)) / (2 * h);
    worst = std::max({worst, rel(mu, p.mu), rel(kappa, p.kappa)});
    detail += to_string(g) + " mu " + fmt("%.6g", mu) + " kappa " + fmt("%.6g", kappa) + "; ";
  }
  return {worst <= 1e-3, detail + "max relative deviation " + fmt("%.1e", worst)};
}

// --- 5: viscoelastic integrator ----------------------------------------------------

double relaxation_error() {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams vp{0.0, 0.0, 12.0, 0.2, 1.0};
  const double t_rel = vp.eta_D_B / (4 * vp.mu_B);
  const DefGrad f = DefGrad::simple_shear(1e-3);
  const double dt = t_rel / 1000.0;
  StepResult s = update_state(ViscoState{}, f, 1e-9 * t_rel, eq, vp);
  const double tau0 = s.tau_B(0, 1);
  double worst = 0.0;
  for (int n = 1; n <= 3000; ++n) {
    s = update_state(s.state, f, dt, eq, vp);
    const double exact = std::exp(-n * dt / t_rel);
    worst = std::max(worst, std::abs(s.tau_B(0, 1) / tau0 - exact) / exact);
  }
  return worst;
}

double observed_order() {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams vp{0.3, 1.5, 12.0, 0.2, 1.0};
  LoadProgram lp;
  lp.amplitude = 0.5;
  lp.frequency = 1.0;
  lp.cycles = 1;
  auto run = [&](int steps) {
    lp.steps_per_cycle = steps;
    return simulate_cyclic(lp, eq, vp).column("stress_MPa");
  };
  const int coarse = 100;
  const std::vector<double> s1 = run(coarse), s2 = run(2 * coarse), ref = run(64 * coarse);
  auto error = [&](const std::vector<double>& s, int stride) {
    double e = 0.0;
    for (int i = 0; i <= coarse; ++i) {
      const double d = s[i * stride] - ref[i * 64];
      e += d * d;
    }
    return std::sqrt(e / (coarse + 1));
  };
  return std::log2(error(s1, 1) / error(s2, 2));
}

double loss_modulus_error(double frequency) {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams vp{0.0, 0.0, 12.0, 0.2, 1.0};
  LoadProgram lp;
  lp.amplitude = 1e-3;
  lp.frequency = frequency;
  lp.cycles = 10;
  lp.steps_per_cycle = 2000;
  const double d = dissipation_per_cycle(simulate_cyclic(lp, eq, vp));
  const double t = vp.eta_D_B / (4 * vp.mu_B), w = 2 * std::numbers::pi * frequency;
  const double loss = 4 * vp.mu_B * w * t / (1 + w * w * t * t);
  return rel(d, std::numbers::pi * lp.amplitude * lp.amplitude * loss);
}

Outcome criterion5() {
  Clock clock;
  const double a = relaxation_error();
  const double order = observed_order();
  double c = 0.0;
  for (double f : {0.1, 1.0 / (2 * std::numbers::pi * 1.25), 1.0}) c = std::max(c, loss_modulus_error(f));
  const double t = clock.seconds();
  const bool ok = a <= 0.01 && order >= 0.9 && order <= 1.1 && c <= 0.02 && t < 10.0;
  return {ok, "(a) relaxation max relative error " + fmt("%.2e", a) + ", (b) observed order " + fmt("%.3f", order) +
                  ", (c) loss modulus max relative error " + fmt("%.2e", c) + " at 0.1, 0.127, 1 Hz; " +
                  fmt("%.2f", t) + " s"};
}

// --- 6: dissipativity ------------------------------------------------------------------

Outcome criterion6() {
  const ViscoParams vp{0.3, 1.5, 12.0, 0.2, 1.0};
  const ViscoParams none{0.0, 0.0, 12.0, 0.0, 1.0};
  double min_d = INFINITY, max_eq = 0.0;
  int runs = 0;
  bool ok = true;
  std::string failure;
  for (Tdm g : kGrades) {
    const EhmParams eq = reference_params(g);
    for (double f : {0.1, 1.0, 10.0})
      for (double a : {0.1, 0.5, 1.0}) {
        LoadProgram lp;
        lp.amplitude = a;
        lp.frequency = f;
        try {
          min_d = std::min(min_d, dissipation_per_cycle(simulate_cyclic(lp, eq, vp)));
          max_eq = std::max(max_eq, std::abs(dissipation_per_cycle(simulate_cyclic(lp, eq, none))));
        } catch (const Error& e) {
          ok = false;
          failure = e.what();
        }
        ++runs;
      }
  }
  ok = ok && min_d >= 0.0 && max_eq <= 1e-9;
  return {ok, std::to_string(runs) + " shear runs (3 materials x 3 frequencies x 3 amplitudes): min D " +
                  fmt("%.4e", min_d) + " MPa, max |D| without branches " + fmt("%.1e", max_eq) + " MPa" +
                  (failure.empty() ? "" : "; " + failure)};
}

// --- 7: equilibrium calibration round trip ---------------------------------------------

Outcome criterion7() {
  bool ok = true;
  std::string detail;
  for (Tdm g : kGrades) {
    Clock clock;
    const EhmParams truth = reference_params(g);
    EquilibriumFitOptions opts;
    opts.initial = initial_guess_from_moduli(initial_moduli_guess(g));

    const auto clean = synth_equilibrium_campaign(truth, {});
    const EquilibriumFit fit = fit_equilibrium(clean, opts);
    const EhmParams& q = fit.params;
    const double e1 = std::max({rel(q.mu, truth.mu), rel(q.k, truth.k), rel(q.kappa, truth.kappa),
                                rel(q.k_hat, truth.k_hat)});
    const double e2 = std::max({rel(q.kappa1, truth.kappa1), rel(q.k_tilde, truth.k_tilde), rel(q.m, truth.m)});

    SynthOptions noisy;
    noisy.noise = 0.01;
    noisy.seed = 1000 + static_cast<int>(g);
    const auto data = synth_equilibrium_campaign(truth, noisy);
    const EquilibriumFit nfit = fit_equilibrium(data, opts);
    double ratio = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double s = 0.0;
      for (double v : clean[i].stress) s += v * v;
      const double floor = noisy.noise * std::sqrt(s / clean[i].size());
      ratio = std::max(ratio, nfit.rms[i].rms / floor);
    }
    const double t = clock.seconds();
    const bool pass = e1 <= 0.01 && e2 <= 0.05 && ratio <= 2.0 && t < 60.0;
    ok = ok && pass;
    detail += to_string(g) + ": err " + fmt("%.1e", e1) + "/" + fmt("%.1e", e2) + ", noisy RMS " + fmt("%.2f", ratio) +
              "x floor, " + fmt("%.1f", t) + " s; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// --- 8: viscoelastic calibration round trip -------------------------------------------

Outcome criterion8() {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams truth{0.3, 1.5, 12.0, 0.2, 1.0};
  double worst = 0.0;
  std::string detail;
  bool ok = true;
  for (LoadMode mode : {LoadMode::shear, LoadMode::uniaxial}) {
    LoadProgram lp;
    lp.mode = mode;
    lp.frequency = 1.0;
    lp.amplitude = mode == LoadMode::shear ? 1.0 : 0.1;
    lp.pre_strain = mode == LoadMode::shear ? 0.0 : -0.1;
    const Dataset cell = synth_cyclic_cell(lp, eq, truth, 50);
    ViscoFitOptions opts;  // mu_A, k_A, mu_B start at 0.1, 0.5, 0.1
    const GridCellResult r = fit_visco_cell(cell, eq, opts);
    const double e = std::max({rel(r.params.mu_A, truth.mu_A), rel(r.params.k_A, truth.k_A),
                               rel(r.params.mu_B, truth.mu_B)});
    ok = ok && r.ok && e <= 0.05;
    worst = std::max(worst, e);
    detail += to_string(mode) + " cell: mu_A " + fmt("%.4f", r.params.mu_A) + ", k_A " + fmt("%.4f", r.params.k_A) +
              ", mu_B " + fmt("%.4f", r.params.mu_B) + (r.ok ? "" : " (" + r.error + ")") + "; ";
  }
  return {ok, detail + "max relative error " + fmt("%.1e", worst)};
}

// --- 9: command line end to end -----------------------------------------------------------

struct CliStep {
  std::string args;     // after the executable; {out} is the scratch directory
  std::string stdout_;  // file name for captured stdout, empty to discard
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
  return s;
}

// fit.json carries full-precision optimizer diagnostics (residual norms near
// machine precision, covariance); it is compared on the fitted parameters.
bool same_fit(const fs::path& a, const fs::path& b, std::string& why) {
  const Json ja = read_json(a), jb = read_json(b);
  for (const auto& [k, v] : jb["params"].items()) {
    if (!ja["params"].contains(k) || rel(ja["params"][k].get<double>(), v.get<double>()) > 1e-6) {
      why = "fit.json parameter " + k + " differs";
      return false;
    }
  }
  if (ja["fit"]["converged"] != jb["fit"]["converged"]) {
    why = "fit.json convergence flag differs";
    return false;
  }
  return true;
}

Outcome criterion9(bool update_golden) {
  const fs::path data = HENCKY_DATA_DIR;
  const fs::path golden = HENCKY_GOLDEN_DIR;
  const fs::path out = fs::temp_directory_path() / "hencky_acceptance_cli";
  fs::remove_all(out);
  fs::create_directories(out);
  const std::string d = (data / "tdm500").string();
  const std::vector<CliStep> steps = {
      {"sweep --material TDM500 --mode shear --to 1 --points 21 --out {out}/sweep_shear.csv", ""},
      {"sweep --material TDM500 --mode uniaxial --to -1 --points 21 --out {out}/sweep_uniaxial.csv", ""},
      {"sweep --material TDM500 --mode pseudo_hydro --to -0.5 --points 21 --out {out}/sweep_pseudo_hydro.csv", ""},
      {"simulate --config " + d + "/simulate.json --out {out}/simulate.csv", "simulate_summary.json"},
      {"fit --config " + d + "/campaign.json --out-dir {out}", ""},
      {"compare --config " + d + "/campaign.json --out-dir {out}", ""},
  };
  int failed_step = -1;
  int code = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string cmd = std::string(HENCKY_CLI) + " " + replace_all(steps[i].args, "{out}", out.string());
    cmd += steps[i].stdout_.empty() ? " >/dev/null" : " >" + (out / steps[i].stdout_).string();
    cmd += " 2>" + (out / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (code != 0) {
      failed_step = static_cast<int>(i);
      break;
    }
  }
  if (failed_step >= 0)
    return {false, "step '" + steps[failed_step].args.substr(0, steps[failed_step].args.find(' ')) +
                       "' exited with " + std::to_string(code) + ": " + slurp(out / "stderr.txt")};
  fs::remove(out / "stderr.txt");

  std::vector<std::string> produced;
  for (const auto& e : fs::directory_iterator(out)) produced.push_back(e.path().filename().string());
  std::sort(produced.begin(), produced.end());

  if (update_golden) {
    fs::create_directories(golden);
    for (const auto& e : fs::directory_iterator(golden)) fs::remove(e.path());
    for (const auto& f : produced) fs::copy_file(out / f, golden / f);
    return {true, "golden files regenerated (" + std::to_string(produced.size()) + " files)"};
  }

  std::vector<std::string> expected;
  for (const auto& e : fs::directory_iterator(golden)) expected.push_back(e.path().filename().string());
  std::sort(expected.begin(), expected.end());
  if (expected != produced)
    return {false, "produced " + std::to_string(produced.size()) + " files, golden set has " +
                       std::to_string(expected.size())};
  for (const auto& f : produced) {
    std::string why;
    if (f == "fit.json") {
      if (!same_fit(out / f, golden / f, why)) return {false, why};
    } else if (slurp(out / f) != slurp(golden / f)) {
      return {false, f + " differs from the golden copy"};
    }
  }
  return {true, "sweep x3, simulate, fit, compare exited 0; " + std::to_string(produced.size()) +
                    " outputs match the golden files"};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  bool update_golden = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--update-golden") {
      update_golden = true;
    } else {
      std::cerr << "usage: hencky_acceptance [--only N] [--update-golden]\n";
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"hyperelastic consistency", criterion1},
      {"closed-form equivalence", criterion2},
      {"pseudo-hydrostatic validity window", criterion3},
      {"infinitesimal moduli", criterion4},
      {"viscoelastic integrator", criterion5},
      {"dissipativity", criterion6},
      {"equilibrium calibration round trip", criterion7},
      {"viscoelastic calibration round trip", criterion8},
      {"command line end to end", [&] { return criterion9(update_golden); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << "  " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
