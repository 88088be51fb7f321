#include "hencky/viscoelastic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hencky/drivers.hpp"
#include "hencky/error.hpp"
#include "hencky/roots.hpp"

namespace hencky {

void validate(const ViscoParams& p) {
  auto nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!nonneg(p.mu_A) || !nonneg(p.mu_B)) throw DomainError("ViscoParams: moduli must be >= 0");
  if (!nonneg(p.k_A)) throw DomainError("ViscoParams: k_A must be >= 0");
  if (!(std::isfinite(p.eta_D_A) && p.eta_D_A > 0.0) || !(std::isfinite(p.eta_D_B) && p.eta_D_B > 0.0))
    throw DomainError("ViscoParams: viscosities must be > 0");
}

SymTensor3 branch_stress(const SymTensor3& b_e, Branch branch, const ViscoParams& p) {
  const SymTensor3 d = dev3(log_sym(b_e));
  if (branch == Branch::B) return d * (4.0 * p.mu_B);
  return d * (4.0 * p.mu_A * std::exp(p.k_A * d.dot(d)));
}

double branch_energy(const SymTensor3& b_e, Branch branch, const ViscoParams& p) {
  const SymTensor3 d = dev3(log_sym(b_e));
  const double s = d.dot(d);
  if (branch == Branch::B) return p.mu_B * s;
  if (p.k_A == 0.0) return p.mu_A * s;
  return p.mu_A / p.k_A * std::exp(p.k_A * s);
}

namespace {

struct BranchConstants {
  double mu;   // modulus
  double k;    // exponential stiffening (0 for branch B)
  double eta;  // deviatoric viscosity
};

// Principal Kirchhoff stress of a branch from principal elastic log strains
// eps = 1/2 log(b_e): tau = 8 mu e^{4 k |e|^2} e with e = dev eps.
std::array<double, 3> principal_tau(const std::array<double, 3>& eps, const BranchConstants& c) {
  const double vol = (eps[0] + eps[1] + eps[2]) / 3.0;
  std::array<double, 3> e{eps[0] - vol, eps[1] - vol, eps[2] - vol};
  const double r2 = e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
  const double g = 8.0 * c.mu * std::exp(4.0 * c.k * r2);
  return {g * e[0], g * e[1], g * e[2]};
}

std::string trial_diagnostic(double r_trial, double dt) {
  std::ostringstream os;
  os << "trial deviatoric strain norm " << r_trial << ", dt " << dt;
  return os.str();
}

// Backward-Euler corrector. Returns the corrected principal strains.
std::array<double, 3> correct_reduced(const std::array<double, 3>& eps_tr, double dt,
                                      const BranchConstants& c, const UpdateOptions& opts) {
  const double vol = (eps_tr[0] + eps_tr[1] + eps_tr[2]) / 3.0;
  std::array<double, 3> e_tr{eps_tr[0] - vol, eps_tr[1] - vol, eps_tr[2] - vol};
  const double r_tr = std::sqrt(e_tr[0] * e_tr[0] + e_tr[1] * e_tr[1] + e_tr[2] * e_tr[2]);
  if (r_tr == 0.0 || c.mu == 0.0) return eps_tr;

  // e = e_tr / (1 + beta e^{4 k r^2}), r = |e|; the direction of e_tr is kept.
  const double beta = 4.0 * c.mu * dt / c.eta;
  double scale;
  if (c.k == 0.0) {
    scale = 1.0 / (1.0 + beta);
  } else {
    // phi(r) = r (1 + beta e^{4 k r^2}) - r_tr is increasing and convex on
    // r >= 0, so Newton from r_tr decreases monotonically to the root.
    double r = r_tr;
    bool converged = false;
    for (int it = 0; it < opts.max_iter; ++it) {
      const double g = std::exp(4.0 * c.k * r * r);
      const double phi = r * (1.0 + beta * g) - r_tr;
      const double dphi = 1.0 + beta * g * (1.0 + 8.0 * c.k * r * r);
      const double step = phi / dphi;
      r -= step;
      if (std::abs(step) <= opts.tol * r_tr) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(r))
      throw ConvergenceError("viscoelastic corrector (branch A) did not converge: " +
                             trial_diagnostic(r_tr, dt));
    scale = r / r_tr;
  }
  return {vol + scale * e_tr[0], vol + scale * e_tr[1], vol + scale * e_tr[2]};
}

std::array<double, 3> correct_full(const std::array<double, 3>& eps_tr, double dt,
                                   const BranchConstants& c, const UpdateOptions& opts) {
  if (c.mu == 0.0) return eps_tr;
  const double h = dt / (2.0 * c.eta);
  std::array<double, 3> eps = eps_tr;
  double scale = std::abs(eps_tr[0]) + std::abs(eps_tr[1]) + std::abs(eps_tr[2]);
  if (scale == 0.0) return eps;
  for (int it = 0; it < opts.max_iter; ++it) {
    const std::array<double, 3> tau = principal_tau(eps, c);
    const double vol = (eps[0] + eps[1] + eps[2]) / 3.0;
    const std::array<double, 3> e{eps[0] - vol, eps[1] - vol, eps[2] - vol};
    const double r2 = e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
    const double g = 8.0 * c.mu * std::exp(4.0 * c.k * r2);

    Tensor3 jac;
    std::array<double, 3> res{};
    for (int i = 0; i < 3; ++i) {
      res[i] = eps[i] - eps_tr[i] + h * tau[i];
      for (int j = 0; j < 3; ++j) {
        const double proj = (i == j ? 1.0 : 0.0) - 1.0 / 3.0;
        jac(i, j) = (i == j ? 1.0 : 0.0) + h * g * (proj + 8.0 * c.k * e[i] * e[j]);
      }
    }
    const Tensor3 inv = jac.inverse();
    double step_norm = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double d = inv(i, 0) * res[0] + inv(i, 1) * res[1] + inv(i, 2) * res[2];
      eps[i] -= d;
      step_norm = std::max(step_norm, std::abs(d));
    }
    if (step_norm <= opts.tol * scale) return eps;
  }
  throw ConvergenceError("viscoelastic corrector (full Newton) did not converge: " +
                         trial_diagnostic(scale, dt));
}

struct BranchUpdate {
  SymTensor3 b_e;
  SymTensor3 tau;
};

BranchUpdate advance_branch(const SymTensor3& b_e, const Tensor3& f_rel, double dt,
                            const BranchConstants& c, const UpdateOptions& opts) {
  const SymTensor3 trial = rotate(b_e, f_rel);
  const Spectral3 spec = eig_sym(trial);
  std::array<double, 3> eps_tr{};
  for (int i = 0; i < 3; ++i) {
    if (!(spec.values[i] > 1e-14))
      throw DomainError("viscoelastic predictor: trial Finger tensor is not positive definite");
    eps_tr[i] = 0.5 * std::log(spec.values[i]);
  }
  const std::array<double, 3> eps = opts.corrector == CorrectorMode::reduced
                                        ? correct_reduced(eps_tr, dt, c, opts)
                                        : correct_full(eps_tr, dt, c, opts);
  const std::array<double, 3> tau = principal_tau(eps, c);
  return {spec.compose_values({std::exp(2.0 * eps[0]), std::exp(2.0 * eps[1]), std::exp(2.0 * eps[2])}),
          spec.compose_values(tau)};
}

}  // namespace

StepResult update_state(const ViscoState& st, const DefGrad& f_new, double dt, const EhmParams& eq,
                        const ViscoParams& vp, const UpdateOptions& opts) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("update_state: dt must be > 0");
  const Tensor3 f_rel = f_new.tensor() * st.f_prev.tensor().inverse();

  const BranchUpdate a = advance_branch(st.b_e_A, f_rel, dt, {vp.mu_A, vp.k_A, vp.eta_D_A}, opts);
  const BranchUpdate b = advance_branch(st.b_e_B, f_rel, dt, {vp.mu_B, 0.0, vp.eta_D_B}, opts);

  StepResult out{ViscoState{a.b_e, b.b_e, f_new, st.t + dt}, {}, {}, a.tau, b.tau};
  // Spatial Kirchhoff stress of the isotropic equilibrium spring: evaluated
  // on log V, i.e. R tau(log U) R^T.
  out.tau_eq = kirchhoff_ehm(log_left_stretch(f_new), eq);
  out.tau_total = out.tau_eq + a.tau + b.tau;
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(LoadMode m) { return m == LoadMode::shear ? "shear" : "uniaxial"; }

LoadMode load_mode_from_string(const std::string& s) {
  if (s == "shear" || s == "cyclic_shear") return LoadMode::shear;
  if (s == "uniaxial" || s == "cyclic_uniaxial") return LoadMode::uniaxial;
  throw InputError("unknown load mode '" + s + "' (expected shear or uniaxial)");
}

void validate(const LoadProgram& lp) {
  if (!(std::isfinite(lp.frequency) && lp.frequency > 0.0))
    throw DomainError("LoadProgram: frequency must be > 0");
  if (!std::isfinite(lp.amplitude) || !std::isfinite(lp.pre_strain))
    throw DomainError("LoadProgram: non-finite strain");
  if (lp.cycles < 1) throw DomainError("LoadProgram: cycles must be >= 1");
  if (lp.steps_per_cycle < 40) throw DomainError("LoadProgram: steps_per_cycle must be >= 40");
}

namespace {

std::string fmt_meta(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

DefGrad shear_grad(double gamma) { return DefGrad::simple_shear(gamma); }

DefGrad uniaxial_grad(double l1, double l2) {
  const double s2 = std::exp(l2);
  return DefGrad::diag(std::exp(l1), s2, s2);
}

}  // namespace

CurveSeries simulate_cyclic(const LoadProgram& lp, const EhmParams& eq, const ViscoParams& vp,
                            const UpdateOptions& opts) {
  validate(lp);
  validate(vp);

  const double period = 1.0 / lp.frequency;
  const double dt = period / lp.steps_per_cycle;
  const int steps = lp.cycles * lp.steps_per_cycle;
  auto strain_at = [&](int n) {
    return lp.pre_strain + lp.amplitude * std::sin(2.0 * std::numbers::pi * lp.frequency * (n * dt));
  };

  CurveSeries out;
  out.mode = lp.mode == LoadMode::shear ? "cyclic_shear" : "cyclic_uniaxial";
  out.columns = {"t_s", "strain", "stress_MPa", "branchA_norm", "branchB_norm"};
  out.meta = {{"load_mode", to_string(lp.mode)},
              {"frequency_Hz", fmt_meta(lp.frequency)},
              {"amplitude", fmt_meta(lp.amplitude)},
              {"pre_strain", fmt_meta(lp.pre_strain)},
              {"cycles", std::to_string(lp.cycles)},
              {"steps_per_cycle", std::to_string(lp.steps_per_cycle)},
              {"pre_strain_relaxed", lp.pre_strain_relaxed ? "true" : "false"}};
  out.rows.reserve(steps + 1);

  ViscoState st;
  double lateral = 0.0;
  if (lp.pre_strain_relaxed) {
    if (lp.mode == LoadMode::shear) {
      st = ViscoState::relaxed(shear_grad(lp.pre_strain));
      out.rows.push_back({0.0, lp.pre_strain, shear_kirchhoff(lp.pre_strain, eq), 0.0, 0.0});
    } else {
      const UniaxialSolution s0 = uniaxial_solve(lp.pre_strain, eq);
      lateral = s0.state.log_lambda2;
      st = ViscoState::relaxed(uniaxial_grad(lp.pre_strain, lateral));
      out.rows.push_back({0.0, lp.pre_strain, s0.stress, 0.0, 0.0});
    }
  } else {
    out.rows.push_back({0.0, 0.0, 0.0, 0.0, 0.0});
  }

  for (int n = 1; n <= steps; ++n) {
    const double strain = strain_at(n);
    StepResult step{st, {}, {}, {}, {}};
    double stress = 0.0;
    try {
      if (lp.mode == LoadMode::shear) {
        step = update_state(st, shear_grad(strain), dt, eq, vp, opts);
        stress = step.tau_total(0, 1);
      } else {
        auto sigma22 = [&](double l2) {
          return update_state(st, uniaxial_grad(strain, l2), dt, eq, vp, opts).tau_total(1, 1);
        };
        // Bracket the lateral strain around the previous value.
        double width = std::max(1e-6, 2.0 * std::abs(strain - out.rows.back()[1]));
        double lo = lateral - width, hi = lateral + width;
        double flo = sigma22(lo), fhi = sigma22(hi);
        for (int expand = 0; (flo > 0.0) == (fhi > 0.0) && expand < 60; ++expand) {
          width *= 2.0;
          lo = lateral - width;
          hi = lateral + width;
          flo = sigma22(lo);
          fhi = sigma22(hi);
        }
        const RootResult r = brent(sigma22, lo, hi, 1e-13, 1e-16);
        lateral = r.x;
        const DefGrad f = uniaxial_grad(strain, lateral);
        step = update_state(st, f, dt, eq, vp, opts);
        stress = step.tau_total(0, 0) / f.det();
      }
    } catch (const Error& e) {
      throw ConvergenceError("simulate_cyclic: step " + std::to_string(n) + ": " + e.what());
    }
    st = step.state;
    out.rows.push_back({n * dt, strain, stress, step.tau_A.norm(), step.tau_B.norm()});
  }
  return out;
}

double dissipation_per_cycle(const CurveSeries& series) {
  const std::string* spc = series.find_meta("steps_per_cycle");
  if (spc == nullptr) throw InputError("dissipation_per_cycle: series has no steps_per_cycle");
  const std::size_t n = std::stoul(*spc);
  if (n == 0 || series.rows.size() < n + 1)
    throw InputError("dissipation_per_cycle: fewer than one full cycle in the series");

  const bool stretch = series.mode == "cyclic_uniaxial";
  const std::size_t js = series.column_index("strain");
  const std::size_t jt = series.column_index("stress_MPa");
  const std::size_t first = series.rows.size() - 1 - n;
  double d = 0.0;
  for (std::size_t i = first; i < series.rows.size() - 1; ++i) {
    const auto& r0 = series.rows[i];
    const auto& r1 = series.rows[i + 1];
    const double x0 = stretch ? std::exp(r0[js]) : r0[js];
    const double x1 = stretch ? std::exp(r1[js]) : r1[js];
    d += 0.5 * (r0[jt] + r1[jt]) * (x1 - x0);
  }
  if (d < -1e-9)
    throw InvariantError("dissipation_per_cycle: negative dissipation " + std::to_string(d) + " MPa");
  return d;
}

}  // namespace hencky
