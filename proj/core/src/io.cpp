#include "hencky/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hencky/error.hpp"

namespace hencky {

namespace fs = std::filesystem;

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

double round_sig9(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

void erase_meta(CurveSeries& s, const std::string& key) {
  std::erase_if(s.meta, [&](const auto& kv) { return kv.first == key; });
}

}  // namespace

void flip_to_compression_positive(CurveSeries& s, const std::vector<std::string>& columns) {
  if (const std::string* sc = s.find_meta("sign_convention"); sc && *sc == kCompressionPositive)
    throw InputError("series is already compression-positive");
  for (const std::string& c : columns) {
    const std::size_t j = s.column_index(c);
    for (auto& row : s.rows) row[j] = -row[j];
  }
  s.set_meta("sign_convention", kCompressionPositive);
  s.set_meta("flipped_columns", join(columns, " "));
}

void restore_tension_positive(CurveSeries& s) {
  const std::string* sc = s.find_meta("sign_convention");
  if (!sc || *sc == kTensionPositive) return;
  if (*sc != kCompressionPositive) throw InputError("unknown sign_convention '" + *sc + "'");
  const std::string* flipped = s.find_meta("flipped_columns");
  if (!flipped) throw InputError("compression-positive series without a flipped_columns entry");
  std::istringstream names(*flipped);
  std::string c;
  while (names >> c) {
    std::size_t j = 0;
    try {
      j = s.column_index(c);
    } catch (const std::out_of_range&) {
      throw InputError("flipped column '" + c + "' is not in the header");
    }
    for (auto& row : s.rows) row[j] = -row[j];
  }
  s.set_meta("sign_convention", kTensionPositive);
  erase_meta(s, "flipped_columns");
}

void apply_plot_convention(CurveSeries& s) {
  if (s.mode == "uniaxial")
    flip_to_compression_positive(s, {"strain_log_axial", "strain_log_lateral", "stress_MPa"});
  else if (s.mode == "pseudo_hydro")
    flip_to_compression_positive(s, {"strain", "stress_MPa", "pressure_MPa"});
}

void write_csv(std::ostream& os, const CurveSeries& s) {
  os << "# mode: " << s.mode << '\n';
  os << "# units: stress MPa, time s, strain dimensionless\n";
  const std::string* sc = s.find_meta("sign_convention");
  os << "# sign_convention: " << (sc ? *sc : std::string(kTensionPositive)) << '\n';
  for (const auto& [k, v] : s.meta)
    if (k != "sign_convention") os << "# " << k << ": " << v << '\n';
  os << join(s.columns, ",") << '\n';
  std::size_t line = 0;
  for (const auto& row : s.rows) {
    ++line;
    if (row.size() != s.columns.size())
      throw InvariantError("write_csv: row " + std::to_string(line) + " has the wrong width");
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!std::isfinite(row[j]))
        throw InvariantError("write_csv: non-finite value in row " + std::to_string(line) + ", column " +
                             s.columns[j]);
      os << (j ? "," : "") << format_number(row[j]);
    }
    os << '\n';
  }
}

void write_csv(const fs::path& path, const CurveSeries& s) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write '" + path.string() + "'");
  write_csv(os, s);
  if (!os) throw InputError("error writing '" + path.string() + "'");
}

CurveSeries read_csv(std::istream& is, const std::string& source) {
  CurveSeries s;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto fail = [&](const std::string& msg) {
    throw InputError(source + ": line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      if (have_header) fail("comment line after the column header");
      const auto colon = t.find(':');
      if (colon == std::string::npos) continue;  // free comment
      const std::string key = trim(std::string_view(t).substr(1, colon - 1));
      const std::string value = trim(std::string_view(t).substr(colon + 1));
      if (key == "mode")
        s.mode = value;
      else if (key != "units")
        s.set_meta(key, value);
      continue;
    }
    if (!have_header) {
      s.columns = split(t, ',');
      for (std::size_t j = 0; j < s.columns.size(); ++j) {
        if (s.columns[j].empty()) fail("empty column name");
        for (std::size_t i = 0; i < j; ++i)
          if (s.columns[i] == s.columns[j]) fail("duplicate column '" + s.columns[j] + "'");
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> cells = split(t, ',');
    if (cells.size() != s.columns.size())
      fail("expected " + std::to_string(s.columns.size()) + " values, found " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string& c = cells[j];
      if (c.empty()) fail("empty value in column '" + s.columns[j] + "'");
      const char* first = c.data();
      if (*first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, c.data() + c.size(), row[j]);
      if (ec != std::errc() || ptr != c.data() + c.size())
        fail("cannot parse '" + c + "' in column '" + s.columns[j] + "'");
      if (!std::isfinite(row[j])) fail("non-finite value in column '" + s.columns[j] + "'");
    }
    s.rows.push_back(std::move(row));
  }
  if (!have_header) throw InputError(source + ": no column header row");
  return s;
}

CurveSeries read_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path.string() + "'");
  return read_csv(is, path.string());
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> required_columns(DatasetMode mode) {
  switch (mode) {
    case DatasetMode::shear_eq:
    case DatasetMode::pseudo_hydro_eq: return {"strain", "stress_MPa"};
    case DatasetMode::uniaxial_eq: return {"strain_log_axial", "strain_log_lateral", "stress_MPa"};
    case DatasetMode::cyclic_shear:
    case DatasetMode::cyclic_uniaxial: return {"t_s", "strain", "stress_MPa"};
  }
  return {};
}

double meta_number(const CurveSeries& s, const std::string& key, const std::string& source, bool required,
                   double fallback = 0.0) {
  const std::string* v = s.find_meta(key);
  if (!v) {
    if (required) throw InputError(source + ": header entry '" + key + "' is required");
    return fallback;
  }
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size() || !std::isfinite(out))
    throw InputError(source + ": header entry '" + key + "' is not a number");
  return out;
}

}  // namespace

Dataset dataset_from_series(const CurveSeries& series, DatasetMode mode, const std::string& source) {
  CurveSeries s = series;
  restore_tension_positive(s);
  for (const std::string& c : required_columns(mode)) {
    bool found = false;
    for (const auto& have : s.columns) found = found || have == c;
    if (!found) throw InputError(source + ": missing column '" + c + "' required for mode " + to_string(mode));
  }
  Dataset d;
  d.mode = mode;
  d.name = s.find_meta("name") ? *s.find_meta("name") : fs::path(source).stem().string();
  if (const std::string* m = s.find_meta("material")) d.density = *m;
  if (mode == DatasetMode::uniaxial_eq) {
    d.strain = s.column("strain_log_axial");
    d.lateral = s.column("strain_log_lateral");
  } else {
    d.strain = s.column("strain");
  }
  d.stress = s.column("stress_MPa");
  if (is_cyclic(mode)) {
    d.time = s.column("t_s");
    d.frequency = meta_number(s, "frequency_Hz", source, true);
    d.amplitude = meta_number(s, "amplitude", source, true);
    d.pre_strain = meta_number(s, "pre_strain", source, false);
    if (const std::string* r = s.find_meta("pre_strain_relaxed")) {
      if (*r != "true" && *r != "false") throw InputError(source + ": pre_strain_relaxed must be true or false");
      d.pre_strain_relaxed = *r == "true";
    }
  }
  try {
    validate(d);
  } catch (const InputError& e) {
    throw InputError(source + ": " + e.what());
  }
  return d;
}

Dataset parse_dataset(const fs::path& path, DatasetMode mode) {
  return dataset_from_series(read_csv(path), mode, path.string());
}

CurveSeries dataset_to_series(const Dataset& d) {
  CurveSeries s;
  s.mode = to_string(d.mode);
  s.columns = required_columns(d.mode);
  if (!d.name.empty()) s.set_meta("name", d.name);
  if (!d.density.empty()) s.set_meta("material", d.density);
  if (is_cyclic(d.mode)) {
    s.set_meta("frequency_Hz", format_number(d.frequency));
    s.set_meta("amplitude", format_number(d.amplitude));
    s.set_meta("pre_strain", format_number(d.pre_strain));
    s.set_meta("pre_strain_relaxed", d.pre_strain_relaxed ? "true" : "false");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    switch (d.mode) {
      case DatasetMode::uniaxial_eq: s.rows.push_back({d.strain[i], d.lateral[i], d.stress[i]}); break;
      case DatasetMode::cyclic_shear:
      case DatasetMode::cyclic_uniaxial: s.rows.push_back({d.time[i], d.strain[i], d.stress[i]}); break;
      default: s.rows.push_back({d.strain[i], d.stress[i]});
    }
  }
  return s;
}

// --- JSON ---------------------------------------------------------------------

namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError(what + ": unknown key '" + key + "'");
  }
}

double get_number(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing key '" + std::string(key) + "'");
  const Json& v = j.at(key);
  if (!v.is_number()) throw InputError(what + ": '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

double get_number(const Json& j, const char* key, const std::string& what, double fallback) {
  return j.contains(key) ? get_number(j, key, what) : fallback;
}

int get_int(const Json& j, const char* key, const std::string& what, int fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw InputError(what + ": '" + std::string(key) + "' must be an integer");
  return v.get<int>();
}

bool get_bool(const Json& j, const char* key, const std::string& what, bool fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_boolean()) throw InputError(what + ": '" + std::string(key) + "' must be true or false");
  return v.get<bool>();
}

std::string get_string(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing key '" + std::string(key) + "'");
  const Json& v = j.at(key);
  if (!v.is_string()) throw InputError(what + ": '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

Json number_array(std::span<const double> v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

}  // namespace

Json to_json(const EhmParams& p) {
  return Json{{"mu", p.mu},         {"k", p.k},           {"kappa", p.kappa}, {"k_hat", p.k_hat},
              {"kappa1", p.kappa1}, {"k_tilde", p.k_tilde}, {"m", p.m}};
}

EhmParams ehm_params_from_json(const Json& j) {
  const std::string what = "EHM parameters";
  if (j.is_object() && j.contains("material") && j.size() == 1)
    return reference_params(tdm_from_string(get_string(j, "material", what)));
  check_keys(j, {"mu", "k", "kappa", "k_hat", "kappa1", "k_tilde", "m"}, what);
  EhmParams p{get_number(j, "mu", what),     get_number(j, "k", what),       get_number(j, "kappa", what),
              get_number(j, "k_hat", what),  get_number(j, "kappa1", what),  get_number(j, "k_tilde", what),
              get_number(j, "m", what)};
  validate(p);
  return p;
}

Json to_json(const ViscoParams& p) {
  return Json{{"mu_A", p.mu_A}, {"k_A", p.k_A}, {"eta_D_A", p.eta_D_A}, {"mu_B", p.mu_B}, {"eta_D_B", p.eta_D_B}};
}

ViscoParams visco_params_from_json(const Json& j) {
  const std::string what = "viscoelastic parameters";
  check_keys(j, {"mu_A", "k_A", "eta_D_A", "mu_B", "eta_D_B"}, what);
  ViscoParams p;
  p.mu_A = get_number(j, "mu_A", what);
  p.k_A = get_number(j, "k_A", what);
  p.eta_D_A = get_number(j, "eta_D_A", what, p.eta_D_A);
  p.mu_B = get_number(j, "mu_B", what);
  p.eta_D_B = get_number(j, "eta_D_B", what, p.eta_D_B);
  validate(p);
  return p;
}

Json to_json(const LoadProgram& lp) {
  return Json{{"mode", to_string(lp.mode)},
              {"amplitude", lp.amplitude},
              {"frequency", lp.frequency},
              {"pre_strain", lp.pre_strain},
              {"cycles", lp.cycles},
              {"steps_per_cycle", lp.steps_per_cycle},
              {"pre_strain_relaxed", lp.pre_strain_relaxed}};
}

LoadProgram load_program_from_json(const Json& j) {
  const std::string what = "load program";
  check_keys(j, {"mode", "amplitude", "frequency", "pre_strain", "cycles", "steps_per_cycle", "pre_strain_relaxed"},
             what);
  LoadProgram lp;
  if (j.contains("mode")) lp.mode = load_mode_from_string(get_string(j, "mode", what));
  lp.amplitude = get_number(j, "amplitude", what);
  lp.frequency = get_number(j, "frequency", what, lp.frequency);
  lp.pre_strain = get_number(j, "pre_strain", what, lp.pre_strain);
  lp.cycles = get_int(j, "cycles", what, lp.cycles);
  lp.steps_per_cycle = get_int(j, "steps_per_cycle", what, lp.steps_per_cycle);
  lp.pre_strain_relaxed = get_bool(j, "pre_strain_relaxed", what, lp.pre_strain_relaxed);
  validate(lp);
  return lp;
}

Json to_json(const ClassicalParams& p) {
  struct {
    Json operator()(const ArrudaBoyce& a) const {
      return {{"model", "arruda-boyce"}, {"mu", a.mu}, {"lambda_lock", a.lambda_lock}, {"kappa_vol", a.kappa_vol}};
    }
    Json operator()(const MooneyRivlin& a) const {
      return {{"model", "mooney-rivlin"}, {"c10", a.c10}, {"c01", a.c01}, {"kappa_vol", a.kappa_vol}};
    }
    Json operator()(const Ogden3& a) const {
      return {{"model", "ogden3"},
              {"mu", number_array(a.mu_p)},
              {"alpha", number_array(a.alpha_p)},
              {"kappa_vol", a.kappa_vol}};
    }
  } v;
  return std::visit(v, p);
}

ClassicalParams classical_params_from_json(const Json& j) {
  const std::string what = "classical parameters";
  if (!j.is_object()) throw InputError(what + ": expected an object");
  ClassicalParams out;
  switch (classical_kind_from_string(get_string(j, "model", what))) {
    case ClassicalKind::arruda_boyce:
      check_keys(j, {"model", "mu", "lambda_lock", "kappa_vol"}, what);
      out = ArrudaBoyce{get_number(j, "mu", what), get_number(j, "lambda_lock", what),
                        get_number(j, "kappa_vol", what)};
      break;
    case ClassicalKind::mooney_rivlin:
      check_keys(j, {"model", "c10", "c01", "kappa_vol"}, what);
      out = MooneyRivlin{get_number(j, "c10", what), get_number(j, "c01", what), get_number(j, "kappa_vol", what)};
      break;
    case ClassicalKind::ogden3: {
      check_keys(j, {"model", "mu", "alpha", "kappa_vol"}, what);
      Ogden3 o;
      for (const char* key : {"mu", "alpha"}) {
        const Json& a = j.contains(key) ? j.at(key) : Json();
        if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() || !a[2].is_number())
          throw InputError(what + ": '" + std::string(key) + "' must be an array of 3 numbers");
        auto& dst = std::string(key) == "mu" ? o.mu_p : o.alpha_p;
        for (int i = 0; i < 3; ++i) dst[i] = a[i].get<double>();
      }
      o.kappa_vol = get_number(j, "kappa_vol", what);
      out = o;
      break;
    }
  }
  validate(out);
  return out;
}

Json to_json(const FitResult& r) {
  Json params = Json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) params[r.names[i]] = r.params[i];
  Json cov = Json::array();
  const std::size_t n = r.params.size();
  if (r.covariance.size() == n * n)
    for (std::size_t i = 0; i < n; ++i)
      cov.push_back(number_array(std::span(r.covariance).subspan(i * n, n)));
  return Json{{"params", params},
              {"param_names", r.names},
              {"param_vector", number_array(r.params)},
              {"residual_norm", r.residual_norm},
              {"initial_residual_norm", r.initial_residual_norm},
              {"iterations", r.iterations},
              {"evaluations", r.evaluations},
              {"converged", r.converged},
              {"status", r.status},
              {"covariance", cov}};
}

Json to_json(const std::vector<DatasetRms>& rms) {
  Json out = Json::array();
  for (const auto& d : rms) out.push_back({{"dataset", d.name}, {"rms_MPa", d.rms}});
  return out;
}

Json to_json(const CurveSeries& s) {
  Json meta = Json::object();
  for (const auto& [k, v] : s.meta) meta[k] = v;
  if (!s.find_meta("sign_convention")) meta["sign_convention"] = kTensionPositive;
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    Json r = Json::array();
    for (double x : row) r.push_back(round_sig9(x));
    rows.push_back(std::move(r));
  }
  return Json{{"mode", s.mode}, {"meta", meta}, {"columns", s.columns}, {"rows", rows}};
}

Json round_numbers(const Json& j) {
  if (j.is_number_float()) return round_sig9(j.get<double>());
  if (j.is_array() || j.is_object()) {
    Json out = j;
    for (auto& v : out) v = round_numbers(v);
    return out;
  }
  return j;
}

Json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open '" + path.string() + "'");
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

EhmParams load_ehm_params(const fs::path& path) {
  try {
    return ehm_params_from_json(read_json(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

CurveSeries grid_table(const std::vector<GridCellResult>& cells) {
  CurveSeries s;
  s.mode = "visco_grid";
  s.columns = {"frequency_Hz", "amplitude", "mu_A", "k_A", "mu_B", "rms_MPa", "ok"};
  for (const auto& c : cells) {
    if (c.ok)
      s.rows.push_back({c.frequency, c.amplitude, c.params.mu_A, c.params.k_A, c.params.mu_B, c.rms, 1.0});
    else
      s.rows.push_back({c.frequency, c.amplitude, 0.0, 0.0, 0.0, 0.0, 0.0});
  }
  if (!cells.empty()) {
    s.set_meta("eta_D_A", format_number(cells.front().params.eta_D_A));
    s.set_meta("eta_D_B", format_number(cells.front().params.eta_D_B));
  }
  return s;
}

// --- campaign -------------------------------------------------------------------

std::vector<Dataset> CampaignConfig::load_datasets() const {
  std::vector<Dataset> out;
  for (const DatasetRef& ref : datasets) {
    Dataset d = parse_dataset(ref.path, ref.mode);
    if (!ref.name.empty()) d.name = ref.name;
    d.weight = ref.weight;
    if (d.density.empty()) d.density = material;
    out.push_back(std::move(d));
  }
  return out;
}

EhmParams CampaignConfig::equilibrium_params() const {
  if (params_path) return load_ehm_params(*params_path);
  if (!material.empty()) return reference_params(tdm_from_string(material));
  throw InputError("campaign: neither 'params' nor a reference 'material' is given");
}

EhmParams CampaignConfig::initial_guess() const {
  if (initial) return *initial;
  if (!material.empty()) return initial_guess_from_moduli(initial_moduli_guess(tdm_from_string(material)));
  throw InputError("campaign: neither 'initial' nor a reference 'material' is given");
}

CampaignConfig campaign_from_json(const Json& j, const fs::path& base_dir) {
  const std::string what = "campaign";
  check_keys(j,
             {"material", "params", "visco", "datasets", "initial", "bounds", "snap_m", "m_starts", "lm",
              "load_program", "visco_fit", "classical"},
             what);
  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    if (path.is_relative()) path = base_dir / path;
    if (!fs::exists(path)) throw InputError(what + ": referenced file '" + path.string() + "' does not exist");
    return path;
  };

  CampaignConfig c;
  if (j.contains("material")) c.material = get_string(j, "material", what);
  if (j.contains("params")) c.params_path = resolve(get_string(j, "params", what));
  if (j.contains("visco")) c.visco = visco_params_from_json(j.at("visco"));

  if (j.contains("datasets")) {
    const Json& list = j.at("datasets");
    if (!list.is_array()) throw InputError(what + ": 'datasets' must be an array");
    for (const Json& e : list) {
      check_keys(e, {"path", "mode", "name", "weight"}, "dataset entry");
      DatasetRef ref;
      ref.path = resolve(get_string(e, "path", "dataset entry"));
      ref.mode = dataset_mode_from_string(get_string(e, "mode", "dataset entry"));
      if (e.contains("name")) ref.name = get_string(e, "name", "dataset entry");
      ref.weight = get_number(e, "weight", "dataset entry", 1.0);
      if (!(ref.weight >= 0.0)) throw InputError("dataset entry: weight must be >= 0");
      c.datasets.push_back(std::move(ref));
    }
  }

  if (j.contains("initial")) {
    const Json& init = j.at("initial");
    if (init.is_object() && init.contains("guess")) {
      check_keys(init, {"guess"}, "initial");
      c.initial = initial_guess_from_moduli(initial_moduli_guess(tdm_from_string(get_string(init, "guess", "initial"))));
    } else {
      c.initial = ehm_params_from_json(init);
    }
  }

  if (j.contains("bounds")) {
    const Json& b = j.at("bounds");
    if (!b.is_object()) throw InputError(what + ": 'bounds' must be an object");
    for (const auto& [key, range] : b.items()) {
      auto it = std::find_if(c.bounds.begin(), c.bounds.end(), [&](const ParamSpec& s) { return s.name == key; });
      if (it == c.bounds.end()) throw InputError("bounds: unknown parameter '" + key + "'");
      if (!range.is_array() || range.size() != 2)
        throw InputError("bounds: '" + key + "' must be [lower, upper] (null for unbounded)");
      constexpr double inf = std::numeric_limits<double>::infinity();
      it->lower = range[0].is_null() ? -inf : range[0].get<double>();
      it->upper = range[1].is_null() ? inf : range[1].get<double>();
      if (!(it->lower < it->upper)) throw InputError("bounds: empty range for '" + key + "'");
    }
  }

  c.snap_m = get_bool(j, "snap_m", what, c.snap_m);
  if (j.contains("m_starts")) {
    const Json& list = j.at("m_starts");
    if (!list.is_array()) throw InputError(what + ": 'm_starts' must be an array of numbers");
    std::vector<double> ms;
    for (const Json& m : list) {
      if (!m.is_number() || !(m.get<double>() > 2.0)) throw InputError(what + ": 'm_starts' entries must be > 2");
      ms.push_back(m.get<double>());
    }
    c.m_starts = ms;
  }
  if (j.contains("lm")) {
    const Json& l = j.at("lm");
    check_keys(l, {"max_iter", "ftol", "gtol"}, "lm");
    c.lm.max_iter = get_int(l, "max_iter", "lm", c.lm.max_iter);
    c.lm.ftol = get_number(l, "ftol", "lm", c.lm.ftol);
    c.lm.gtol = get_number(l, "gtol", "lm", c.lm.gtol);
    if (c.lm.max_iter < 1 || !(c.lm.ftol >= 0.0) || !(c.lm.gtol >= 0.0)) throw InputError("lm: invalid settings");
  }
  if (j.contains("load_program")) c.load_program = load_program_from_json(j.at("load_program"));

  if (j.contains("visco_fit")) {
    const Json& v = j.at("visco_fit");
    check_keys(v, {"initial", "cycles", "steps_per_cycle", "threads"}, "visco_fit");
    if (v.contains("initial")) c.visco_fit.initial = visco_params_from_json(v.at("initial"));
    c.visco_fit.cycles = get_int(v, "cycles", "visco_fit", c.visco_fit.cycles);
    c.visco_fit.steps_per_cycle = get_int(v, "steps_per_cycle", "visco_fit", c.visco_fit.steps_per_cycle);
    const int threads = get_int(v, "threads", "visco_fit", 1);
    if (threads < 1) throw InputError("visco_fit: threads must be >= 1");
    c.visco_fit.threads = static_cast<unsigned>(threads);
  }
  c.visco_fit.lm = c.lm;

  if (j.contains("classical")) {
    const Json& list = j.at("classical");
    if (!list.is_array()) throw InputError(what + ": 'classical' must be an array of model names");
    for (const Json& m : list) {
      if (!m.is_string()) throw InputError(what + ": 'classical' must be an array of model names");
      c.classical_models.push_back(to_string(classical_kind_from_string(m.get<std::string>())));
    }
  }
  return c;
}

CampaignConfig load_campaign(const fs::path& path) {
  const Json j = read_json(path);
  try {
    return campaign_from_json(j, path.parent_path());
  } catch (const Json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace hencky
