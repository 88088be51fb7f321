#include "hencky/hyperelastic.hpp"

#include <cmath>

#include "hencky/error.hpp"

namespace hencky {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

// sign(x) |x|^{m-1}, the analytic value |x|^m / x with 0 at x = 0.
double signed_pow_m1(double x, double m) {
  if (x == 0.0) return 0.0;
  const double v = std::pow(std::abs(x), m - 1.0);
  return x > 0.0 ? v : -v;
}

// (e^{k s} - 1) / k, continued by s at k = 0.
double expm1_over(double k, double s) { return k > 0.0 ? std::expm1(k * s) / k : s; }

}  // namespace

std::vector<std::string> validate(const EhmParams& p, ValidationOptions opts) {
  if (!finite_pos(p.mu)) throw DomainError("EhmParams: mu must be > 0");
  if (!finite_pos(p.kappa)) throw DomainError("EhmParams: kappa must be > 0");
  if (!finite_nonneg(p.kappa1)) throw DomainError("EhmParams: kappa1 must be >= 0");
  if (!finite_nonneg(p.k)) throw DomainError("EhmParams: k must be >= 0");
  if (!finite_nonneg(p.k_hat)) throw DomainError("EhmParams: k_hat must be >= 0");
  if (!finite_nonneg(p.k_tilde)) throw DomainError("EhmParams: k_tilde must be >= 0");
  if (!(std::isfinite(p.m) && p.m >= 2.0)) throw DomainError("EhmParams: m must be >= 2");
  if (opts.strict) {
    if (p.k < 0.25) throw DomainError("EhmParams (strict): k must be >= 1/4");
    if (p.k_hat < 0.125) throw DomainError("EhmParams (strict): k_hat must be >= 1/8");
  }
  std::vector<std::string> warnings;
  if (p.m == 2.0 && p.kappa1 > 0.0)
    warnings.emplace_back(
        "m = 2: the kappa1 term adds kappa1 to the infinitesimal bulk modulus (kappa + kappa1)");
  return warnings;
}

std::string to_string(Tdm grade) {
  switch (grade) {
    case Tdm::d500: return "TDM500";
    case Tdm::d600: return "TDM600";
    case Tdm::d800: return "TDM800";
  }
  return "?";
}

Tdm tdm_from_string(const std::string& s) {
  if (s == "TDM500" || s == "500") return Tdm::d500;
  if (s == "TDM600" || s == "600") return Tdm::d600;
  if (s == "TDM800" || s == "800") return Tdm::d800;
  throw InputError("unknown material grade '" + s + "' (expected TDM500, TDM600 or TDM800)");
}

EhmParams reference_params(Tdm grade) {
  switch (grade) {
    case Tdm::d500: return {0.12, 0.59, 1.40, 0.13, 116.0, 268.0, 4.0};
    case Tdm::d600: return {0.19, 0.39, 2.80, 0.13, 647.0, 1989.0, 6.0};
    case Tdm::d800: return {0.50, 0.27, 4.40, 0.13, 404.0, 1353.0, 6.0};
  }
  throw DomainError("reference_params: unknown grade");
}

ModuliGuess initial_moduli_guess(Tdm grade) {
  switch (grade) {
    case Tdm::d500: return {0.22, 2.40, 297.0};
    case Tdm::d600: return {0.31, 2.70, 315.0};
    case Tdm::d800: return {0.63, 4.50, 281.0};
  }
  throw DomainError("initial_moduli_guess: unknown grade");
}

// ---------------------------------------------------------------------------

double ehm_pressure(double x, const EhmParams& p) {
  double v = p.kappa * std::exp(p.k_hat * x * x) * x;
  if (p.kappa1 != 0.0)
    v += p.kappa1 * std::exp(p.k_tilde * std::pow(std::abs(x), p.m)) * signed_pow_m1(x, p.m);
  return v;
}

double ehm_pressure_slope(double x, const EhmParams& p) {
  const double x2 = x * x;
  double v = p.kappa * std::exp(p.k_hat * x2) * (1.0 + 2.0 * p.k_hat * x2);
  if (p.kappa1 != 0.0) {
    const double ax = std::abs(x);
    const double lead = (p.m == 2.0) ? 1.0 : (p.m - 1.0) * std::pow(ax, p.m - 2.0);
    v += p.kappa1 * std::exp(p.k_tilde * std::pow(ax, p.m)) *
         (lead + p.k_tilde * p.m * std::pow(ax, 2.0 * p.m - 2.0));
  }
  return v;
}

double energy_ehm(const SymTensor3& log_u, const EhmParams& p) {
  if (p.k == 0.0 || p.k_hat == 0.0 || (p.kappa1 != 0.0 && p.k_tilde == 0.0))
    throw DomainError(
        "energy_ehm: energy undefined for a zero nonlinearity parameter (stress is defined); "
        "use energy_ehm_excess");
  const double s = dev3(log_u).dot(dev3(log_u));
  const double x = log_u.trace();
  double w = p.mu / p.k * std::exp(p.k * s) + p.kappa / (2.0 * p.k_hat) * std::exp(p.k_hat * x * x);
  if (p.kappa1 != 0.0)
    w += p.kappa1 / (p.m * p.k_tilde) * std::exp(p.k_tilde * std::pow(std::abs(x), p.m));
  return w;
}

double energy_ehm_excess(const SymTensor3& log_u, const EhmParams& p) {
  const SymTensor3 d = dev3(log_u);
  const double s = d.dot(d);
  const double x = log_u.trace();
  double w = p.mu * expm1_over(p.k, s) + 0.5 * p.kappa * expm1_over(p.k_hat, x * x);
  if (p.kappa1 != 0.0) w += p.kappa1 / p.m * expm1_over(p.k_tilde, std::pow(std::abs(x), p.m));
  return w;
}

SymTensor3 kirchhoff_ehm(const SymTensor3& log_u, const EhmParams& p) {
  const SymTensor3 d = dev3(log_u);
  const double s = d.dot(d);
  return d * (2.0 * p.mu * std::exp(p.k * s)) +
         SymTensor3::identity() * ehm_pressure(log_u.trace(), p);
}

SymTensor3 cauchy_ehm(const SymTensor3& log_u, const EhmParams& p) {
  return kirchhoff_ehm(log_u, p) * std::exp(-log_u.trace());
}

// ---------------------------------------------------------------------------

double energy_hencky(const SymTensor3& log_u, double mu, double kappa) {
  const SymTensor3 d = dev3(log_u);
  const double x = log_u.trace();
  return mu * d.dot(d) + 0.5 * kappa * x * x;
}

SymTensor3 kirchhoff_hencky(const SymTensor3& log_u, double mu, double kappa) {
  return dev3(log_u) * (2.0 * mu) + SymTensor3::identity() * (kappa * log_u.trace());
}

double energy_eh(const SymTensor3& log_u, double mu, double k, double kappa, double k_hat) {
  return energy_ehm(log_u, {mu, k, kappa, k_hat, 0.0, 0.0, 4.0});
}

SymTensor3 kirchhoff_eh(const SymTensor3& log_u, double mu, double k, double kappa, double k_hat) {
  return kirchhoff_ehm(log_u, {mu, k, kappa, k_hat, 0.0, 0.0, 4.0});
}

// ---------------------------------------------------------------------------
// Classical models

namespace {

constexpr std::array<double, 5> kArrudaBoyceCoeff = {0.5, 1.0 / 20.0, 11.0 / 1050.0,
                                                     19.0 / 7000.0, 519.0 / 673750.0};

struct Isochoric {
  double j;
  SymTensor3 b_bar;  // J^{-2/3} F F^T
};

Isochoric isochoric(const DefGrad& f) {
  const double j = f.det();
  return {j, a_at(f.tensor()) * std::pow(j, -2.0 / 3.0)};
}

double vol_energy(double j, double kappa) {
  const double lj = std::log(j);
  return 0.5 * kappa * lj * lj;
}

SymTensor3 vol_cauchy(double j, double kappa) {
  return SymTensor3::identity() * (kappa * std::log(j) / j);
}

struct EnergyVisitor {
  const Isochoric& iso;

  double operator()(const ArrudaBoyce& p) const {
    const double i1 = iso.b_bar.trace();
    double w = 0.0;
    for (int i = 1; i <= 5; ++i)
      w += kArrudaBoyceCoeff[i - 1] / std::pow(p.lambda_lock, 2 * i - 2) *
           (std::pow(i1, i) - std::pow(3.0, i));
    return p.mu * w + vol_energy(iso.j, p.kappa_vol);
  }

  double operator()(const MooneyRivlin& p) const {
    const double i1 = iso.b_bar.trace();
    const SymTensor3& b = iso.b_bar;
    const double i2 = 0.5 * (i1 * i1 - b.dot(b));
    return p.c10 * (i1 - 3.0) + p.c01 * (i2 - 3.0) + vol_energy(iso.j, p.kappa_vol);
  }

  double operator()(const Ogden3& p) const {
    const Spectral3 e = eig_sym(iso.b_bar);
    double w = 0.0;
    for (int q = 0; q < 3; ++q) {
      if (p.mu_p[q] == 0.0) continue;
      double s = -3.0;
      for (double l2 : e.values) s += std::pow(l2, 0.5 * p.alpha_p[q]);
      w += p.mu_p[q] / p.alpha_p[q] * s;
    }
    return w + vol_energy(iso.j, p.kappa_vol);
  }
};

struct CauchyVisitor {
  const Isochoric& iso;

  SymTensor3 operator()(const ArrudaBoyce& p) const {
    const double i1 = iso.b_bar.trace();
    double dw = 0.0;
    for (int i = 1; i <= 5; ++i)
      dw += i * kArrudaBoyceCoeff[i - 1] / std::pow(p.lambda_lock, 2 * i - 2) * std::pow(i1, i - 1);
    return dev3(iso.b_bar) * (2.0 * p.mu * dw / iso.j) + vol_cauchy(iso.j, p.kappa_vol);
  }

  SymTensor3 operator()(const MooneyRivlin& p) const {
    const SymTensor3& b = iso.b_bar;
    const double i1 = b.trace();
    const SymTensor3 b2 = (b.full() * b.full()).sym();
    const SymTensor3 s = b * (p.c10 + p.c01 * i1) - b2 * p.c01;
    return dev3(s) * (2.0 / iso.j) + vol_cauchy(iso.j, p.kappa_vol);
  }

  SymTensor3 operator()(const Ogden3& p) const {
    const Spectral3 e = eig_sym(iso.b_bar);
    std::array<double, 3> principal{};
    for (int q = 0; q < 3; ++q) {
      if (p.mu_p[q] == 0.0) continue;
      std::array<double, 3> la{};
      double mean = 0.0;
      for (int i = 0; i < 3; ++i) {
        la[i] = std::pow(e.values[i], 0.5 * p.alpha_p[q]);
        mean += la[i] / 3.0;
      }
      for (int i = 0; i < 3; ++i) principal[i] += p.mu_p[q] * (la[i] - mean);
    }
    for (double& v : principal) v /= iso.j;
    return e.compose_values(principal) + vol_cauchy(iso.j, p.kappa_vol);
  }
};

}  // namespace

std::string model_name(const ClassicalParams& p) {
  struct {
    std::string operator()(const ArrudaBoyce&) const { return "arruda-boyce"; }
    std::string operator()(const MooneyRivlin&) const { return "mooney-rivlin"; }
    std::string operator()(const Ogden3&) const { return "ogden3"; }
  } v;
  return std::visit(v, p);
}

void validate(const ClassicalParams& p) {
  struct {
    void operator()(const ArrudaBoyce& a) const {
      if (!finite_pos(a.mu)) throw DomainError("ArrudaBoyce: mu must be > 0");
      if (!(std::isfinite(a.lambda_lock) && a.lambda_lock > 1.0))
        throw DomainError("ArrudaBoyce: lambda_lock must be > 1");
      if (!finite_pos(a.kappa_vol)) throw DomainError("ArrudaBoyce: kappa_vol must be > 0");
    }
    void operator()(const MooneyRivlin& a) const {
      if (!std::isfinite(a.c10) || !std::isfinite(a.c01))
        throw DomainError("MooneyRivlin: non-finite coefficient");
      if (!(a.c10 + a.c01 > 0.0)) throw DomainError("MooneyRivlin: c10 + c01 must be > 0");
      if (!finite_pos(a.kappa_vol)) throw DomainError("MooneyRivlin: kappa_vol must be > 0");
    }
    void operator()(const Ogden3& a) const {
      double s = 0.0;
      for (int q = 0; q < 3; ++q) {
        if (!std::isfinite(a.mu_p[q]) || !std::isfinite(a.alpha_p[q]))
          throw DomainError("Ogden3: non-finite coefficient");
        if (a.mu_p[q] != 0.0 && a.alpha_p[q] == 0.0)
          throw DomainError("Ogden3: alpha_p must be nonzero for active terms");
        s += a.mu_p[q] * a.alpha_p[q];
      }
      if (!(s > 0.0)) throw DomainError("Ogden3: sum mu_p alpha_p must be > 0");
      if (!finite_pos(a.kappa_vol)) throw DomainError("Ogden3: kappa_vol must be > 0");
    }
  } v;
  std::visit(v, p);
}

double energy_classical(const DefGrad& f, const ClassicalParams& p) {
  const Isochoric iso = isochoric(f);
  return std::visit(EnergyVisitor{iso}, p);
}

SymTensor3 cauchy_classical(const DefGrad& f, const ClassicalParams& p) {
  const Isochoric iso = isochoric(f);
  return std::visit(CauchyVisitor{iso}, p);
}

}  // namespace hencky
