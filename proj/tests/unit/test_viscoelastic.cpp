#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hencky/drivers.hpp"
#include "hencky/error.hpp"
#include "hencky/viscoelastic.hpp"
#include "support.hpp"

using namespace hencky;
using testing::max_abs_diff;

namespace {

const ViscoParams kVisco{0.3, 1.5, 12.0, 0.2, 1.0};

double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0, n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += (a[i] - b[i]) * (a[i] - b[i]);
    n += b[i] * b[i];
  }
  return std::sqrt(s / n);
}

}  // namespace

TEST_SUITE("viscoelastic") {

TEST_CASE("branch stress vanishes for volumetric Finger tensors") {
  for (Branch br : {Branch::A, Branch::B}) {
    CHECK(max_abs_diff(branch_stress(SymTensor3::identity(), br, kVisco), SymTensor3::zero()) == 0.0);
    CHECK(max_abs_diff(branch_stress(SymTensor3::identity() * 1.7, br, kVisco), SymTensor3::zero()) < 1e-15);
  }
}

TEST_CASE("branch stress is 2 (dW/db) b") {
  // For an isotropic energy the principal values of 2 (dW/db) b are
  // 2 dW/d(log b_i); differentiate in principal log space.
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (Branch br : {Branch::A, Branch::B}) {
    for (int n = 0; n < 100; ++n) {
      const Tensor3 q = testing::random_rotation(rng);
      std::array<double, 3> l{u(rng), u(rng), u(rng)};
      auto energy = [&](const std::array<double, 3>& v) {
        return branch_energy(rotate(SymTensor3::diag(std::exp(v[0]), std::exp(v[1]), std::exp(v[2])), q), br,
                             kVisco);
      };
      const SymTensor3 tau = branch_stress(
          rotate(SymTensor3::diag(std::exp(l[0]), std::exp(l[1]), std::exp(l[2])), q), br, kVisco);
      const SymTensor3 tau_p = rotate(tau, q.transpose());
      for (int i = 0; i < 3; ++i) {
        const double h = 1e-5;
        auto at = [&](double s) {
          auto v = l;
          v[i] += s;
          return energy(v);
        };
        const double fd = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
        CHECK(tau_p(i, i) == doctest::Approx(2 * fd).epsilon(1e-6).scale(tau.norm()));
      }
      CHECK(std::abs(tau.trace()) < 1e-13 * std::max(1.0, tau.norm()));
    }
  }
}

TEST_CASE("holding a deformation relaxes the branches monotonically") {
  const EhmParams eq = reference_params(Tdm::d500);
  const DefGrad f = DefGrad::simple_shear(0.5);
  // Instantaneous loading from the virgin state, then hold.
  StepResult s = update_state(ViscoState{}, f, 1e-6, eq, kVisco);
  double previous = (s.tau_A + s.tau_B).norm();
  for (int n = 0; n < 400; ++n) {
    s = update_state(s.state, f, 0.5, eq, kVisco);
    const double now = (s.tau_A + s.tau_B).norm();
    CHECK(now <= previous);
    previous = now;
  }
  // 200 s = 20 time constants of branch A (t = 12 / (4 * 0.3) = 10 s).
  CHECK(max_abs_diff(s.tau_total, s.tau_eq) < 1e-6);
}

TEST_CASE("branch B step relaxation") {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams vp{0.0, 0.0, 12.0, 0.2, 1.0};
  const double t_rel = vp.eta_D_B / (4 * vp.mu_B);
  const double g0 = 1e-3;
  const DefGrad f = DefGrad::simple_shear(g0);
  const double dt = t_rel / 2000;
  StepResult s = update_state(ViscoState{}, f, 1e-9, eq, vp);
  const double tau0 = s.tau_B(0, 1);
  CHECK(tau0 == doctest::Approx(4 * vp.mu_B * g0).epsilon(1e-3));
  for (int n = 1; n <= 4000; ++n) {
    s = update_state(s.state, f, dt, eq, vp);
    if (n % 1000 == 0) CHECK(s.tau_B(0, 1) / tau0 == doctest::Approx(std::exp(-n * dt / t_rel)).epsilon(0.01));
  }
}

TEST_CASE("reduced and full Newton correctors agree") {
  const EhmParams eq = reference_params(Tdm::d600);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  UpdateOptions full;
  full.corrector = CorrectorMode::full_newton;
  for (int n = 0; n < 50; ++n) {
    std::array<double, 9> a{};
    for (double& v : a) v = u(rng);
    a[0] += 1, a[4] += 1, a[8] += 1;
    const Tensor3 f(a);
    if (!(f.det() > 0.3)) continue;
    const ViscoState st{exp_sym(testing::random_sym(rng, 0.2)), exp_sym(testing::random_sym(rng, 0.2)),
                        DefGrad::identity(), 0.0};
    const StepResult r = update_state(st, DefGrad(f), 0.05, eq, kVisco);
    const StepResult g = update_state(st, DefGrad(f), 0.05, eq, kVisco, full);
    CHECK(max_abs_diff(r.tau_A, g.tau_A) < 1e-10);
    CHECK(max_abs_diff(r.tau_B, g.tau_B) < 1e-10);
    CHECK(max_abs_diff(r.state.b_e_A, g.state.b_e_A) < 1e-10);
  }
}

TEST_CASE("rotating the loading rotates the response") {
  const EhmParams eq = reference_params(Tdm::d500);
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    const Tensor3 q = testing::random_rotation(rng);
    ViscoState a, b;
    b.f_prev = DefGrad(q * Tensor3::identity() * q.transpose());
    for (int n = 1; n <= 50; ++n) {
      const Tensor3 f = DefGrad::simple_shear(0.8 * std::sin(0.1 * n)).tensor();
      const StepResult ra = update_state(a, DefGrad(f), 0.02, eq, kVisco);
      const StepResult rb = update_state(b, DefGrad(q * f * q.transpose()), 0.02, eq, kVisco);
      CHECK(max_abs_diff(rotate(ra.tau_total, q), rb.tau_total) < 1e-10);
      a = ra.state;
      b = rb.state;
    }
  }
}

TEST_CASE("update_state input errors") {
  const EhmParams eq = reference_params(Tdm::d500);
  CHECK_THROWS_AS(update_state(ViscoState{}, DefGrad::identity(), 0.0, eq, kVisco), DomainError);
  CHECK_THROWS_AS(validate(ViscoParams{0.1, 0.1, 0.0, 0.1, 1.0}), DomainError);
  CHECK_THROWS_AS(validate(ViscoParams{-0.1, 0.1, 1.0, 0.1, 1.0}), DomainError);
  LoadProgram lp;
  lp.steps_per_cycle = 20;
  CHECK_THROWS_AS(validate(lp), DomainError);
}

TEST_CASE("without branches the simulation is the equilibrium driver") {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams none{0.0, 0.0, 12.0, 0.0, 1.0};
  for (LoadMode mode : {LoadMode::shear, LoadMode::uniaxial}) {
    LoadProgram lp;
    lp.mode = mode;
    lp.amplitude = mode == LoadMode::shear ? 1.0 : 0.2;
    lp.pre_strain = mode == LoadMode::shear ? 0.0 : -0.1;
    lp.frequency = 1.0;
    lp.cycles = 2;
    lp.steps_per_cycle = 100;
    const CurveSeries s = simulate_cyclic(lp, eq, none);
    for (const auto& r : s.rows) {
      const double expected =
          mode == LoadMode::shear ? shear_kirchhoff(r[1], eq) : uniaxial_solve(r[1], eq).stress;
      CHECK(std::abs(r[2] - expected) <= 1e-12 + 1e-9 * std::abs(expected));
    }
    CHECK(std::abs(dissipation_per_cycle(s)) <= 1e-9);
  }
}

TEST_CASE("zero amplitude relaxes to the equilibrium stress") {
  const EhmParams eq = reference_params(Tdm::d500);
  LoadProgram lp;
  lp.mode = LoadMode::shear;
  lp.amplitude = 0.0;
  lp.pre_strain = 0.3;
  lp.frequency = 0.005;  // 200 s per cycle
  lp.cycles = 1;
  const CurveSeries s = simulate_cyclic(lp, eq, kVisco);
  CHECK(s.rows[1][2] > s.rows.back()[2]);
  CHECK(std::abs(s.rows.back()[2] - shear_kirchhoff(0.3, eq)) <= 1e-6);
}

TEST_CASE("loops below the branch frequencies grow with frequency") {
  // Characteristic frequencies 1 / (2 pi t_rel): 0.016 Hz for A, 0.13 Hz for B.
  const EhmParams eq = reference_params(Tdm::d500);
  double previous = 0.0;
  for (double f : {0.0005, 0.002, 0.008}) {
    LoadProgram lp;
    lp.amplitude = 1.0;
    lp.frequency = f;
    const double d = dissipation_per_cycle(simulate_cyclic(lp, eq, kVisco));
    CHECK(d >= previous);
    previous = d;
  }
}

TEST_CASE("steady state and quadrature") {
  // 33 % shear at 1 Hz. At 100 % the first-order time error of backward
  // Euler alone moves D by about 1 % when the step count is doubled.
  const EhmParams eq = reference_params(Tdm::d500);
  LoadProgram lp;
  lp.amplitude = 0.33;
  lp.frequency = 1.0;
  const CurveSeries s = simulate_cyclic(lp, eq, kVisco);
  const std::size_t n = lp.steps_per_cycle;
  std::vector<double> last, before;
  for (std::size_t i = 0; i <= n; ++i) {
    last.push_back(s.rows[s.size() - 1 - n + i][2]);
    before.push_back(s.rows[s.size() - 1 - 2 * n + i][2]);
  }
  CHECK(rms_diff(before, last) < 0.005);

  const double d1 = dissipation_per_cycle(s);
  CHECK(d1 > 0.0);
  lp.steps_per_cycle *= 2;
  const double d2 = dissipation_per_cycle(simulate_cyclic(lp, eq, kVisco));
  CHECK(std::abs(d2 - d1) < 0.005 * d1);
}

TEST_CASE("dissipation needs a full cycle") {
  CurveSeries s;
  s.mode = "cyclic_shear";
  s.columns = {"t_s", "strain", "stress_MPa"};
  s.meta = {{"steps_per_cycle", "40"}};
  for (int i = 0; i < 20; ++i) s.rows.push_back({0.1 * i, 0.0, 0.0});
  CHECK_THROWS_AS(dissipation_per_cycle(s), InputError);
}

}  // TEST_SUITE
