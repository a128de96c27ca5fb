#pragma once

#include "ipq/collective.hpp"
#include "ipq/individual.hpp"

#include <json.hpp>
#include <cstdint>
#include <optional>
#include <set>

namespace ipq {

using json = nlohmann::json;

struct OracleSpec {
  int modes = 400;
  double coverage = 20.0;
  int max_rows = 200;
};

// One scenario run. `kind` is collective or individual; thermalization configs set `steady`.
struct RunSpec {
  std::string name = "run";
  std::string kind = "collective";
  CollectiveScenario coll;
  IndividualScenario ind;
  RunOptions opt;
  bool refine_check = true;
  double tolerance = 1e-6;
  bool quadrature_check = true;
  double quadrature_tolerance = 1e-4;
  bool steady = false;
  bool coefficients = false;
  OracleSpec oracle;

  bool individual() const { return kind == "individual"; }
  double duration() const { return individual() ? ind.duration : coll.duration; }
  void set_duration(double t) {
    coll.duration = t;
    ind.duration = t;
  }
  double gamma_scale() const { return individual() ? std::min(ind.spectra[0].gamma, ind.spectra[1].gamma) : coll.spectrum.gamma; }
};

struct SweepSpec {
  std::string axis;
  std::vector<double> values;
};

struct QecSpec {
  double epsilon = 0.0;  // 0 picks the smallest value keeping every branch unitary
  int cutoff = 4;
  int trials = 100;
  std::uint64_t seed = 7;
};

struct Config {
  std::string name = "config";
  std::string kind;
  std::string units;
  std::string description;
  std::vector<RunSpec> runs;
  std::optional<SweepSpec> sweep;
  QecSpec qec;
  json raw;
};

namespace cfg {

[[noreturn]] inline void fail(const std::string& where, const std::string& msg) {
  throw Error(Error::Kind::Config, "config " + where + ": " + msg);
}

inline void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where, "expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

inline double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return inf;
  }
  fail(where, "expected a number");
}

inline double get(const json& j, const char* key, double def, const std::string& where) {
  return j.contains(key) ? number(j[key], where + "." + key) : def;
}

inline double positive(double v, const std::string& where) {
  if (!(v > 0.0)) fail(where, "must be positive");
  return v;
}

inline double nonneg(double v, const std::string& where) {
  if (!(v >= 0.0)) fail(where, "must be non-negative");
  return v;
}

// Inverse temperature from either "beta" or "temperature" (= 1/beta, 0 meaning zero temperature).
inline double beta_from(const json& j, const std::string& where) {
  if (j.is_object()) fail(where, "expected a number");
  return positive(number(j, where), where);
}

inline double temperature_to_beta(double t, const std::string& where) {
  nonneg(t, where);
  return t == 0.0 ? inf : 1.0 / t;
}

inline Lorentzian spectrum(const json& j, const std::string& where) {
  allow_keys(j, where, {"Gamma", "gamma", "Omega"});
  Lorentzian s;
  s.Gamma = nonneg(get(j, "Gamma", 1.0, where), where + ".Gamma");
  s.gamma = positive(get(j, "gamma", 1.0, where), where + ".gamma");
  s.Omega = get(j, "Omega", 0.0, where);
  return s;
}

inline GateKind gate(const json& j, const std::string& where) {
  allow_keys(j, where, {"type", "strength"});
  GateKind g;
  std::string t = j.value("type", std::string("storage"));
  if (t == "storage")
    g.tag = Gate::Storage;
  else if (t == "x")
    g.tag = Gate::X;
  else if (t == "z")
    g.tag = Gate::Z;
  else
    fail(where + ".type", "expected storage, x or z");
  g.strength = nonneg(get(j, "strength", g.tag == Gate::Storage ? 0.0 : 1.0, where), where + ".strength");
  return g;
}

inline PulseTrain leo(const json& j, const std::string& where) {
  allow_keys(j, where, {"strength", "width", "spacing", "offset"});
  PulseTrain p;
  p.strength = nonneg(get(j, "strength", 0.0, where), where + ".strength");
  p.width = positive(get(j, "width", 1.0, where), where + ".width");
  p.spacing = nonneg(get(j, "spacing", 0.0, where), where + ".spacing");
  p.offset = nonneg(get(j, "offset", 0.0, where), where + ".offset");
  return p;
}

inline cplx complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  fail(where, "expected a number or [re, im]");
}

inline InitialState initial(const json& j, const std::string& where) {
  allow_keys(j, where, {"alpha0", "alpha1", "rho"});
  try {
    if (j.contains("rho")) {
      const json& r = j["rho"];
      if (!r.is_array() || r.size() != 2) fail(where + ".rho", "expected a 2x2 matrix");
      Mat2 m;
      for (int a = 0; a < 2; ++a) {
        if (!r[a].is_array() || r[a].size() != 2) fail(where + ".rho", "expected a 2x2 matrix");
        for (int b = 0; b < 2; ++b) m(a, b) = complex_value(r[a][b], where + ".rho");
      }
      return InitialState::mixed(m);
    }
    cplx a0 = j.contains("alpha0") ? complex_value(j["alpha0"], where + ".alpha0") : cplx(0.0);
    cplx a1 = j.contains("alpha1") ? complex_value(j["alpha1"], where + ".alpha1") : cplx(0.0);
    return InitialState::pure(a0, a1);
  } catch (const Error& e) {
    if (e.kind == Error::Kind::Config) throw;
    fail(where, e.what());
  }
}

inline void solver(const json& j, RunSpec& r, const std::string& where) {
  allow_keys(j, where, {"method", "step", "richardson", "nodes", "window", "refine_check", "tolerance", "quadrature_check",
                        "quadrature_tolerance", "blowup"});
  std::string m = j.value("method", std::string("auto"));
  if (m == "auto")
    r.opt.method = Method::Auto;
  else if (m == "exponential")
    r.opt.method = Method::Exponential;
  else if (m == "generic")
    r.opt.method = Method::Generic;
  else
    fail(where + ".method", "expected auto, exponential or generic");
  r.opt.step = nonneg(get(j, "step", 0.0, where), where + ".step");
  r.opt.richardson = j.value("richardson", r.opt.method == Method::Generic);
  r.opt.nodes = int(positive(get(j, "nodes", 128, where), where + ".nodes"));
  r.opt.window = positive(get(j, "window", 30.0, where), where + ".window");
  r.opt.blowup = positive(get(j, "blowup", 1e8, where), where + ".blowup");
  r.refine_check = j.value("refine_check", true);
  r.tolerance = positive(get(j, "tolerance", 1e-6, where), where + ".tolerance");
  r.quadrature_check = j.value("quadrature_check", true);
  r.quadrature_tolerance = positive(get(j, "quadrature_tolerance", 1e-4, where), where + ".quadrature_tolerance");
}

inline json merged(const json& defaults, const json& run) {
  json out = defaults.is_null() ? json::object() : defaults;
  for (auto it = run.begin(); it != run.end(); ++it) {
    if (it.value().is_object() && out.contains(it.key()) && out[it.key()].is_object())
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) out[it.key()][jt.key()] = jt.value();
    else
      out[it.key()] = it.value();
  }
  return out;
}

inline RunSpec run(const json& j, const std::string& kind, const std::string& where) {
  allow_keys(j, where, {"name", "model", "duration", "gate", "spectrum", "omega0", "beta", "temperature", "spectra", "omega0_pair",
                        "betas", "temperatures", "rwa", "leo", "initial", "solver", "oracle", "output", "steady"});
  RunSpec r;
  r.name = j.value("name", std::string("run"));
  std::string model = kind;
  if (kind == "thermalization") {
    model = j.value("model", std::string("collective"));
    r.steady = j.value("steady", false);
  } else if (j.contains("model") || j.contains("steady")) {
    fail(where, "'model' and 'steady' only apply to thermalization configs");
  }
  if (model != "collective" && model != "individual") fail(where + ".model", "expected collective or individual");
  r.kind = model;

  double duration = j.contains("duration") ? positive(number(j["duration"], where + ".duration"), where + ".duration") : pi;
  GateKind g = j.contains("gate") ? gate(j["gate"], where + ".gate") : GateKind{};
  PulseTrain p = j.contains("leo") ? leo(j["leo"], where + ".leo") : PulseTrain{};
  InitialState init = j.contains("initial") ? initial(j["initial"], where + ".initial")
                                            : InitialState::pure(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
  if (j.contains("beta") && j.contains("temperature")) fail(where, "give either beta or temperature");
  if (j.contains("betas") && j.contains("temperatures")) fail(where, "give either betas or temperatures");

  if (model == "collective") {
    for (const char* k : {"spectra", "omega0_pair", "betas", "temperatures", "rwa"})
      if (j.contains(k)) fail(where, std::string("key '") + k + "' belongs to individual runs");
    CollectiveScenario& c = r.coll;
    c.gate = g;
    c.leo = p;
    c.duration = duration;
    c.init = init;
    if (j.contains("spectrum")) c.spectrum = spectrum(j["spectrum"], where + ".spectrum");
    c.omega0 = get(j, "omega0", c.spectrum.Omega, where);
    c.beta = inf;
    if (j.contains("beta")) c.beta = beta_from(j["beta"], where + ".beta");
    if (j.contains("temperature")) c.beta = temperature_to_beta(number(j["temperature"], where + ".temperature"), where + ".temperature");
  } else {
    for (const char* k : {"spectrum", "omega0", "beta", "temperature"})
      if (j.contains(k)) fail(where, std::string("key '") + k + "' belongs to collective runs");
    IndividualScenario& s = r.ind;
    s.gate = g;
    s.leo = p;
    s.duration = duration;
    s.init = init;
    s.rwa = j.value("rwa", false);
    if (j.contains("spectra")) {
      const json& a = j["spectra"];
      if (a.is_object()) {
        s.spectra[0] = s.spectra[1] = spectrum(a, where + ".spectra");
      } else {
        if (!a.is_array() || a.size() != 2) fail(where + ".spectra", "expected one spectrum or a pair");
        for (int k = 0; k < 2; ++k) s.spectra[k] = spectrum(a[k], where + ".spectra[" + std::to_string(k) + "]");
      }
    }
    if (j.contains("omega0_pair")) {
      const json& a = j["omega0_pair"];
      if (!a.is_array() || a.size() != 2) fail(where + ".omega0_pair", "expected a pair");
      s.omega0 = {number(a[0], where + ".omega0_pair"), number(a[1], where + ".omega0_pair")};
    }
    s.beta = {inf, inf};
    auto pair = [&](const char* key, bool temp) {
      const json& a = j[key];
      std::string w = where + "." + key;
      if (!a.is_array() || a.size() != 2) fail(w, "expected a pair");
      for (int k = 0; k < 2; ++k) s.beta[k] = temp ? temperature_to_beta(number(a[k], w), w) : beta_from(a[k], w);
    };
    if (j.contains("betas")) pair("betas", false);
    if (j.contains("temperatures")) pair("temperatures", true);
  }
  if (j.contains("solver")) solver(j["solver"], r, where + ".solver");
  if (j.contains("oracle")) {
    const json& o = j["oracle"];
    allow_keys(o, where + ".oracle", {"modes", "coverage", "max_rows"});
    r.oracle.modes = int(positive(get(o, "modes", 400, where + ".oracle"), where + ".oracle.modes"));
    r.oracle.coverage = positive(get(o, "coverage", 20.0, where + ".oracle"), where + ".oracle.coverage");
    r.oracle.max_rows = int(positive(get(o, "max_rows", 200, where + ".oracle"), where + ".oracle.max_rows"));
  }
  if (j.contains("output")) {
    allow_keys(j["output"], where + ".output", {"coefficients"});
    r.coefficients = j["output"].value("coefficients", false);
  }
  try {
    if (r.individual())
      r.ind.validate();
    else
      r.coll.validate();
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return r;
}

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> a{"temperature", "beta",     "beta_difference", "gate.strength", "leo.strength",
                                          "leo.width",   "leo.spacing", "Gamma",        "gamma",         "duration"};
  return a;
}

}  // namespace cfg

inline Config parse_config(const json& j) {
  cfg::allow_keys(j, "root", {"name", "kind", "units", "description", "defaults", "runs", "sweep", "qec", "run"});
  Config c;
  c.raw = j;
  c.name = j.value("name", std::string("config"));
  c.description = j.value("description", std::string());
  if (!j.contains("kind")) cfg::fail("root", "missing 'kind'");
  c.kind = j["kind"].get<std::string>();
  if (c.kind != "collective" && c.kind != "individual" && c.kind != "thermalization" && c.kind != "qec")
    cfg::fail("root.kind", "expected collective, individual, thermalization or qec");
  if (!j.contains("units")) cfg::fail("root", "missing 'units'");
  c.units = j["units"].get<std::string>();
  std::string want = c.kind == "thermalization" ? "Gamma" : (c.kind == "qec" ? "none" : "G");
  if (c.units != want) cfg::fail("root.units", "'" + c.kind + "' configs are expressed in units '" + want + "'");

  if (c.kind == "qec") {
    for (const char* k : {"defaults", "runs", "run", "sweep"})
      if (j.contains(k)) cfg::fail("root", std::string("key '") + k + "' does not apply to qec configs");
    if (j.contains("qec")) {
      const json& q = j["qec"];
      cfg::allow_keys(q, "qec", {"epsilon", "cutoff", "trials", "seed"});
      c.qec.epsilon = cfg::nonneg(cfg::get(q, "epsilon", 0.0, "qec"), "qec.epsilon");
      c.qec.cutoff = int(cfg::positive(cfg::get(q, "cutoff", 4, "qec"), "qec.cutoff"));
      c.qec.trials = int(cfg::positive(cfg::get(q, "trials", 100, "qec"), "qec.trials"));
      c.qec.seed = q.value("seed", std::uint64_t(7));
    }
    return c;
  }
  if (j.contains("qec")) cfg::fail("root", "key 'qec' only applies to qec configs");
  json defaults = j.value("defaults", json::object());
  std::vector<json> runs;
  if (j.contains("runs")) {
    if (!j["runs"].is_array() || j["runs"].empty()) cfg::fail("root.runs", "expected a non-empty array");
    for (const auto& r : j["runs"]) runs.push_back(r);
  } else {
    runs.push_back(j.value("run", json::object()));
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    RunSpec r = cfg::run(cfg::merged(defaults, runs[i]), c.kind, "runs[" + std::to_string(i) + "]");
    if (!runs[i].contains("name")) r.name = runs.size() == 1 ? c.name : c.name + "_" + std::to_string(i);
    c.runs.push_back(r);
  }
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    cfg::allow_keys(s, "sweep", {"axis", "values"});
    SweepSpec sw;
    sw.axis = s.value("axis", std::string());
    const auto& axes = cfg::sweep_axes();
    if (std::find(axes.begin(), axes.end(), sw.axis) == axes.end()) cfg::fail("sweep.axis", "unknown axis '" + sw.axis + "'");
    if (!s.contains("values") || !s["values"].is_array()) cfg::fail("sweep.values", "expected an array");
    for (const auto& v : s["values"]) sw.values.push_back(cfg::number(v, "sweep.values"));
    if (sw.values.empty()) cfg::fail("sweep.values", "empty axis");
    c.sweep = sw;
  }
  return c;
}

// Applies one sweep value to a run.
inline void apply_axis(RunSpec& r, const std::string& axis, double v) {
  auto set_beta = [&](double b) {
    r.coll.beta = b;
    r.ind.beta = {b, b};
  };
  if (axis == "temperature") {
    set_beta(cfg::temperature_to_beta(v, "sweep"));
  } else if (axis == "beta") {
    set_beta(cfg::positive(v, "sweep"));
  } else if (axis == "beta_difference") {
    if (!r.individual()) cfg::fail("sweep", "beta_difference needs individual runs");
    double mean = 0.5 * (r.ind.beta[0] + r.ind.beta[1]);
    if (std::isinf(mean)) cfg::fail("sweep", "beta_difference needs finite betas");
    r.ind.beta = {cfg::positive(mean - 0.5 * v, "sweep"), cfg::positive(mean + 0.5 * v, "sweep")};
  } else if (axis == "gate.strength") {
    r.coll.gate.strength = r.ind.gate.strength = cfg::nonneg(v, "sweep");
  } else if (axis == "leo.strength") {
    r.coll.leo.strength = r.ind.leo.strength = cfg::nonneg(v, "sweep");
  } else if (axis == "leo.width") {
    r.coll.leo.width = r.ind.leo.width = cfg::positive(v, "sweep");
  } else if (axis == "leo.spacing") {
    r.coll.leo.spacing = r.ind.leo.spacing = cfg::nonneg(v, "sweep");
  } else if (axis == "Gamma") {
    r.coll.spectrum.Gamma = r.ind.spectra[0].Gamma = r.ind.spectra[1].Gamma = cfg::nonneg(v, "sweep");
  } else if (axis == "gamma") {
    r.coll.spectrum.gamma = r.ind.spectra[0].gamma = r.ind.spectra[1].gamma = cfg::positive(v, "sweep");
  } else if (axis == "duration") {
    r.set_duration(cfg::positive(v, "sweep"));
  } else {
    cfg::fail("sweep.axis", "unknown axis '" + axis + "'");
  }
}

}  // namespace ipq
