#include "hencky/drivers.hpp"

#include <cmath>
#include <limits>

#include "hencky/error.hpp"
#include "hencky/roots.hpp"

namespace hencky {

double shear_stretch(double gamma) { return 0.5 * (std::sqrt(gamma * gamma + 4.0) + gamma); }

SymTensor3 shear_log_stretch(double gamma) {
  const double l = std::log(shear_stretch(gamma));
  const double r = 1.0 / std::sqrt(gamma * gamma + 4.0);
  return {-gamma * l * r, gamma * l * r, 0.0, 2.0 * l * r, 0.0, 0.0};
}

double shear_kirchhoff(double gamma, const EhmParams& p) {
  const double l = std::log(shear_stretch(gamma));
  return 4.0 * p.mu * std::exp(2.0 * p.k * l * l) * l / std::sqrt(gamma * gamma + 4.0);
}

UniaxialStress uniaxial_stress_measured(const UniaxialState& st, const EhmParams& p) {
  const double a = st.a();
  const double x = st.x();
  return {3.0 * p.mu * std::exp(1.5 * p.k * a * a - x) * a, 3.0 * ehm_pressure(x, p) * std::exp(-x)};
}

UniaxialSolution uniaxial_solve(double log_lambda1, const EhmParams& p) {
  if (!std::isfinite(log_lambda1)) throw DomainError("uniaxial_solve: non-finite axial strain");
  if (log_lambda1 == 0.0) return {};

  // sigma_22 and its slope in the lateral log strain.
  auto lateral = [&](double l2) {
    const UniaxialState st{log_lambda1, l2};
    const double a = st.a();
    const double x = st.x();
    const double dev = p.mu * std::exp(1.5 * p.k * a * a);
    const double h = -dev * a + ehm_pressure(x, p);
    const double dh = 2.0 / 3.0 * dev * (1.0 + 3.0 * p.k * a * a) + 2.0 * ehm_pressure_slope(x, p);
    const double ex = std::exp(-x);
    return std::pair{ex * h, ex * (dh - 2.0 * h)};
  };

  const double span = std::abs(log_lambda1);
  const RootResult r = newton_bisect(lateral, -span, span, 1e-13, 100);
  if (!(std::abs(r.residual) <= 1e-10))
    throw ConvergenceError("uniaxial_solve: lateral stress residual " + std::to_string(r.residual) +
                           " MPa at log_lambda1 = " + std::to_string(log_lambda1));

  UniaxialSolution sol;
  sol.state = {log_lambda1, r.x};
  sol.stress = cauchy_ehm(sol.state.log_u(), p)(0, 0);
  sol.lateral_residual = r.residual;
  sol.iterations = r.iterations;
  return sol;
}

double poisson_hat(const UniaxialState& st) {
  if (st.log_lambda1 == 0.0) throw DomainError("poisson_hat: zero axial strain");
  return -st.log_lambda2 / st.log_lambda1;
}

PseudoHydroResult pseudo_hydro(double log_lambda1, const EhmParams& p) {
  const double l = log_lambda1;
  const SymTensor3 sigma = cauchy_ehm(SymTensor3::diag(l, 0.0, 0.0), p);
  PseudoHydroResult out;
  out.sigma11 = sigma(0, 0);
  out.pressure = sigma.trace() / 3.0;

  const double num = 2.0 * p.mu * std::exp(p.k * 2.0 / 3.0 * l * l - l) * l;
  const double den = ehm_pressure(l, p) * std::exp(-l);
  if (den != 0.0) out.ratio = num / den;
  return out;
}

std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::shear: return "shear";
    case SweepMode::uniaxial: return "uniaxial";
    case SweepMode::pseudo_hydro: return "pseudo_hydro";
  }
  return "?";
}

SweepMode sweep_mode_from_string(const std::string& s) {
  if (s == "shear") return SweepMode::shear;
  if (s == "uniaxial") return SweepMode::uniaxial;
  if (s == "pseudo_hydro" || s == "pseudo-hydro") return SweepMode::pseudo_hydro;
  throw InputError("unknown sweep mode '" + s + "' (expected shear, uniaxial, pseudo_hydro)");
}

CurveSeries sweep(SweepMode mode, std::span<const double> grid, const EhmParams& p) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw InputError("sweep: non-finite grid value at index " + std::to_string(i));
    if (i >= 2 && (grid[i] - grid[i - 1]) * (grid[1] - grid[0]) <= 0.0)
      throw InputError("sweep: strain grid is not strictly monotone at index " + std::to_string(i));
  }
  if (grid.size() == 2 && grid[0] == grid[1]) throw InputError("sweep: repeated strain value");

  CurveSeries out;
  out.mode = to_string(mode);
  // Small-strain tangent bulk modulus, used for the limits at zero strain.
  const double bulk0 = ehm_pressure_slope(0.0, p);

  switch (mode) {
    case SweepMode::shear:
      out.columns = {"strain", "stress_MPa"};
      for (double g : grid) out.rows.push_back({g, shear_kirchhoff(g, p)});
      break;
    case SweepMode::uniaxial:
      out.columns = {"strain_log_axial", "strain_log_lateral", "stress_MPa", "poisson_hat"};
      for (double l1 : grid) {
        const UniaxialSolution s = uniaxial_solve(l1, p);
        const double nu = l1 == 0.0 ? (3.0 * bulk0 - 2.0 * p.mu) / (6.0 * bulk0 + 2.0 * p.mu)
                                    : poisson_hat(s.state);
        out.rows.push_back({l1, s.state.log_lambda2, s.stress, nu});
      }
      break;
    case SweepMode::pseudo_hydro:
      out.columns = {"strain", "det_F", "stress_MPa", "pressure_MPa", "ratio"};
      for (double l1 : grid) {
        const PseudoHydroResult r = pseudo_hydro(l1, p);
        const double ratio = r.ratio ? *r.ratio : 2.0 * p.mu / bulk0;
        out.rows.push_back({l1, std::exp(l1), r.sigma11, r.pressure, ratio});
      }
      break;
  }
  return out;
}

}  // namespace hencky
