#include <doctest.h>

#include <cmath>
#include <vector>

#include "hencky/calibration.hpp"
#include "hencky/drivers.hpp"
#include "hencky/error.hpp"

using namespace hencky;

namespace {

double norm2(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("dataset validation") {
  Dataset d;
  d.mode = DatasetMode::shear_eq;
  d.strain = {0.0, 0.1, 0.1};
  d.stress = {0.0, 0.01, 0.02};
  CHECK_THROWS_WITH_AS(validate(d), doctest::Contains("row 3"), InputError);
  d.strain = {0.0, 0.1, 0.2};
  CHECK_NOTHROW(validate(d));
  d.weight = -1.0;
  CHECK_THROWS_AS(validate(d), InputError);
  d.weight = 1.0;
  d.mode = DatasetMode::uniaxial_eq;
  CHECK_THROWS_AS(validate(d), InputError);
  d.mode = DatasetMode::cyclic_shear;
  d.time = {0.0, 0.1, 0.2};
  CHECK_THROWS_AS(validate(d), InputError);  // no frequency
  CHECK_THROWS_AS(dataset_mode_from_string("creep"), InputError);
}

TEST_CASE("parameter vector order") {
  const EhmParams p = reference_params(Tdm::d600);
  const std::vector<double> v = to_vector(p);
  CHECK(v == std::vector<double>{0.19, 0.39, 2.80, 0.13, 647, 1989, 6});
  CHECK(ehm_from_vector(v) == p);
  CHECK(default_ehm_bounds()[6].lower == 2.0);
}

TEST_CASE("synthetic campaigns are reproducible") {
  const EhmParams p = reference_params(Tdm::d500);
  SynthOptions o;
  o.noise = 0.01;
  o.seed = 42;
  const auto a = synth_equilibrium_campaign(p, o);
  const auto b = synth_equilibrium_campaign(p, o);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].stress == b[i].stress);
  o.seed = 43;
  const auto c = synth_equilibrium_campaign(p, o);
  CHECK(a[0].stress != c[0].stress);

  // Noise-free data lie on the model.
  o.noise = 0.0;
  const auto clean = synth_equilibrium_campaign(p, o);
  for (const Dataset& d : clean) {
    CHECK_NOTHROW(validate(d));
    CHECK(d.size() == 40);
  }
  CHECK(norm2(residuals_eq(p, clean)) < 1e-9);
  CHECK(clean[0].stress.back() == doctest::Approx(shear_kirchhoff(1.0, p)).epsilon(1e-14));
}

TEST_CASE("residual grows away from the generating parameters") {
  const EhmParams p = reference_params(Tdm::d500);
  const auto data = synth_equilibrium_campaign(p, {});
  double previous = norm2(residuals_eq(p, data));
  for (double f : {1.01, 1.05, 1.2, 1.5}) {
    EhmParams q = p;
    q.mu *= f;
    const double r = norm2(residuals_eq(q, data));
    CHECK(r > previous);
    previous = r;
  }
}

TEST_CASE("weights") {
  const EhmParams p = reference_params(Tdm::d500);
  auto data = synth_equilibrium_campaign(p, {});
  const std::size_t full = residuals_eq(p, data).size();
  CHECK(full == 40 + 80 + data[2].size());
  data[1].weight = 0.0;
  CHECK(residuals_eq(p, data).size() == 40 + data[2].size());
  for (Dataset& d : data) d.weight = 0.0;
  CHECK(residuals_eq(p, data).empty());
  EquilibriumFitOptions opts;
  opts.initial = p;
  CHECK_THROWS_AS(fit_equilibrium(data, opts), InputError);
}

TEST_CASE("noiseless round trip is deterministic") {
  const EhmParams truth = reference_params(Tdm::d500);
  const auto data = synth_equilibrium_campaign(truth, {});
  EquilibriumFitOptions opts;
  opts.initial = initial_guess_from_moduli(initial_moduli_guess(Tdm::d500));
  const EquilibriumFit a = fit_equilibrium(data, opts);
  const EquilibriumFit b = fit_equilibrium(data, opts);
  CHECK(a.params == b.params);
  CHECK(a.fit.converged);
  CHECK(a.params.mu == doctest::Approx(truth.mu).epsilon(1e-4));
  CHECK(a.params.kappa == doctest::Approx(truth.kappa).epsilon(1e-4));
  REQUIRE(a.snapped_params.has_value());
  CHECK(a.snapped_params->m == 4.0);
  for (const DatasetRms& r : a.rms) CHECK(r.rms < 1e-6);
}

TEST_CASE("visco cell round trip") {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams truth{0.3, 1.5, 12.0, 0.2, 1.0};
  LoadProgram lp;
  lp.amplitude = 1.0;
  lp.frequency = 1.0;
  lp.cycles = 3;
  lp.steps_per_cycle = 100;
  const Dataset d = synth_cyclic_cell(lp, eq, truth, 40);
  ViscoFitOptions opts;
  opts.cycles = 3;
  opts.steps_per_cycle = 100;
  const GridCellResult r = fit_visco_cell(d, eq, opts);
  CHECK(r.ok);
  CHECK(r.params.mu_A == doctest::Approx(truth.mu_A).epsilon(1e-4));
  CHECK(r.params.k_A == doctest::Approx(truth.k_A).epsilon(1e-3));
  CHECK(r.params.mu_B == doctest::Approx(truth.mu_B).epsilon(1e-4));
}

TEST_CASE("a cell without branch A drives mu_A towards zero") {
  const EhmParams eq = reference_params(Tdm::d500);
  const ViscoParams truth{0.0, 0.0, 12.0, 0.2, 1.0};
  LoadProgram lp;
  lp.amplitude = 0.5;
  lp.frequency = 1.0;
  lp.cycles = 3;
  lp.steps_per_cycle = 100;
  const Dataset d = synth_cyclic_cell(lp, eq, truth, 40);
  ViscoFitOptions opts;
  opts.cycles = 3;
  opts.steps_per_cycle = 100;
  const GridCellResult r = fit_visco_cell(d, eq, opts);
  CHECK(r.ok);
  CHECK(r.params.mu_A < 1e-3);
  CHECK(r.params.mu_B == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("visco grid keeps going after a failing cell") {
  const EhmParams eq = reference_params(Tdm::d500);
  LoadProgram lp;
  lp.amplitude = 0.3;
  lp.cycles = 2;
  lp.steps_per_cycle = 50;
  Dataset good = synth_cyclic_cell(lp, eq, {0.2, 1.0, 12.0, 0.1, 1.0}, 30);
  good.name = "good";
  Dataset bad = good;
  bad.name = "bad";
  bad.amplitude = 1e6;  // the simulation cannot follow this program
  ViscoFitOptions opts;
  opts.cycles = 2;
  opts.steps_per_cycle = 50;
  opts.threads = 2;
  const std::vector<Dataset> cells{bad, good};
  const auto res = fit_visco_grid(cells, eq, opts);
  REQUIRE(res.size() == 2);
  CHECK_FALSE(res[0].ok);
  CHECK_FALSE(res[0].error.empty());
  CHECK(res[1].ok);
}

TEST_CASE("classical fit recovers its own model") {
  const MooneyRivlin truth{0.15, 0.02, 3.0};
  std::vector<Dataset> data(2);
  data[0].mode = DatasetMode::shear_eq;
  data[0].name = "shear";
  data[1].mode = DatasetMode::pseudo_hydro_eq;
  data[1].name = "ph";
  for (int i = 1; i <= 20; ++i) {
    data[0].strain.push_back(0.05 * i);
    data[1].strain.push_back(-0.01 * i);
  }
  for (Dataset& d : data) d.stress.assign(d.strain.size(), 1.0);
  data[0].stress = predict_classical(truth, data[0]);
  data[1].stress = predict_classical(truth, data[1]);
  const ClassicalFit f = fit_classical(ClassicalKind::mooney_rivlin, data);
  CHECK(f.fit.converged);
  const auto& mr = std::get<MooneyRivlin>(f.params);
  CHECK(mr.c10 == doctest::Approx(truth.c10).epsilon(1e-5));
  CHECK(mr.c01 == doctest::Approx(truth.c01).epsilon(1e-4));
  CHECK(mr.kappa_vol == doctest::Approx(truth.kappa_vol).epsilon(1e-5));
  CHECK(to_string(ClassicalKind::ogden3) == "ogden3");
  CHECK_THROWS_AS(classical_kind_from_string("yeoh"), InputError);
}

}  // TEST_SUITE
