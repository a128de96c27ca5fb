#include "ipq/ipq.hpp"
#include "ipq/presets.hpp"
#include "ipq/qec_report.hpp"
#include "ipq/runner.hpp"
#include "ipq/verify.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ipq;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { Ok = 0, Failure = 1, BadConfig = 2, NotConverged = 3 };

std::string sha256(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_Digest(data.data(), data.size(), md, &n, EVP_sha256(), nullptr);
  std::string hex;
  char b[3];
  for (unsigned int i = 0; i < n; ++i) {
    std::snprintf(b, sizeof b, "%02x", md[i]);
    hex += b;
  }
  return hex;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  char b[32];
  std::strftime(b, sizeof b, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return b;
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << s;
}

Config load(const std::string& path, const std::string& preset) {
  if (path.empty() == preset.empty()) throw Error(Error::Kind::Config, "give exactly one of --config or --preset");
  std::string text;
  if (!preset.empty()) {
    auto it = presets().find(preset);
    if (it == presets().end()) throw Error(Error::Kind::Config, "unknown preset '" + preset + "'");
    text = it->second;
  } else {
    std::ifstream f(path);
    if (!f) throw Error(Error::Kind::Config, "cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(f), {});
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Error::Kind::Config, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json scenario_json(const RunSpec& r) {
  json j;
  j["model"] = r.kind;
  auto beta = [](double b) { return std::isinf(b) ? json("inf") : json(b); };
  auto spec = [](const Lorentzian& s) { return json{{"Gamma", s.Gamma}, {"gamma", s.gamma}, {"Omega", s.Omega}}; };
  auto leo = [](const PulseTrain& p) { return json{{"strength", p.strength}, {"width", p.width}, {"spacing", p.spacing}, {"offset", p.offset}}; };
  if (r.individual()) {
    const auto& s = r.ind;
    j["gate"] = {{"type", to_string(s.gate.tag)}, {"strength", s.gate.strength}};
    j["spectra"] = {spec(s.spectra[0]), spec(s.spectra[1])};
    j["omega0_pair"] = {s.omega0[0], s.omega0[1]};
    j["betas"] = {beta(s.beta[0]), beta(s.beta[1])};
    j["rwa"] = s.rwa;
    j["leo"] = leo(s.leo);
    j["duration"] = s.duration;
  } else {
    const auto& s = r.coll;
    j["gate"] = {{"type", to_string(s.gate.tag)}, {"strength", s.gate.strength}};
    j["spectrum"] = spec(s.spectrum);
    j["omega0"] = s.omega0;
    j["beta"] = beta(s.beta);
    j["leo"] = leo(s.leo);
    j["duration"] = s.duration;
  }
  j["solver"] = {{"method", to_string(r.opt.method)}, {"richardson", r.opt.richardson}, {"nodes", r.opt.nodes}, {"window", r.opt.window}};
  return j;
}

json record(const Config& c, const RunResult& res, const std::map<std::string, std::string>& digests, const json& extra = {}) {
  json j;
  j["version"] = kVersion;
  j["created"] = timestamp();
  j["config"] = c.raw;
  j["run"] = res.spec.name;
  j["scenario"] = scenario_json(res.spec);
  j["step"] = res.step;
  j["points"] = res.bloch.size();
  j["timing_seconds"] = res.seconds;
  j["refinement"] = {{"ran", res.refine.ran}, {"endpoint_change", res.refine.endpoint_change}, {"tolerance", res.refine.tolerance},
                     {"passed", res.refine.passed}};
  j["quadrature"] = {{"ran", res.quad.ran}, {"relative_change", res.quad.change}, {"tolerance", res.quad.tolerance},
                     {"passed", res.quad.passed}};
  if (res.steady.used)
    j["steady"] = {{"read_time", res.steady.read_time}, {"drift", res.steady.drift}, {"doublings", res.steady.doublings}};
  if (!res.oracle_rows.empty()) {
    j["oracle"] = {{"modes", res.spec.oracle.modes}, {"coverage", res.spec.oracle.coverage}, {"rows", res.oracle_rows.size()}};
    if (!res.oracle_note.empty()) j["oracle"]["note"] = res.oracle_note;
  }
  j["digests"] = digests;
  if (!extra.is_null()) j["sweep"] = extra;
  return j;
}

bool converged(const RunResult& r) {
  bool ok = true;
  if (!r.refine.passed) {
    std::cerr << "run " << r.spec.name << ": grid refinement changed the endpoint by " << r.refine.endpoint_change << " > tolerance "
              << r.refine.tolerance << "\n";
    ok = false;
  }
  if (!r.quad.passed) {
    std::cerr << "run " << r.spec.name << ": doubling the thermal quadrature changed the bath terms by " << r.quad.change
              << " (relative) > tolerance " << r.quad.tolerance << "\n";
    ok = false;
  }
  return ok;
}

std::string emit(const Config& c, const RunResult& res, const fs::path& out, const json& extra = {}) {
  std::string body = csv(res, c.units);
  fs::path cp = out / (res.spec.name + ".csv");
  write_file(cp, body);
  write_file(out / (res.spec.name + ".json"), record(c, res, {{cp.filename().string(), sha256(body)}}, extra).dump(2) + "\n");
  std::cout << "wrote " << cp.string() << " (" << res.bloch.size() << " rows, " << fmt_num(res.seconds) << " s)\n";
  return body;
}

int cmd_qec(const QecSpec& q, const fs::path& out, const std::string& name) {
  QecSummary r = qec_trials(q);
  json j = qec_json(q, r);
  j["version"] = kVersion;
  std::string body = j.dump(2) + "\n";
  std::cout << body;
  if (!out.empty()) {
    fs::create_directories(out);
    write_file(out / (name + ".json"), body);
  }
  return Ok;
}

int cmd_run(const Config& c, const fs::path& out, bool oracle) {
  fs::create_directories(out);
  if (c.kind == "qec") return cmd_qec(c.qec, out, c.name);
  bool ok = true;
  for (const auto& r : c.runs) {
    RunResult res = execute(r, oracle);
    emit(c, res, out);
    ok = converged(res) && ok;
  }
  return ok ? Ok : NotConverged;
}

std::string axis_label(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

int cmd_sweep(const Config& c, const fs::path& out, bool oracle) {
  if (!c.sweep) throw Error(Error::Kind::Config, "config has no sweep section");
  if (c.sweep->values.empty()) throw Error(Error::Kind::Config, "empty sweep axis");
  fs::create_directories(out);
  const auto& sw = *c.sweep;
  std::ostringstream sum;
  sum << "# sweep=" << c.name << " axis=" << sw.axis << " units: time [" << (c.units == "Gamma" ? "1/Gamma" : "1/G")
      << "], n0 n1 [quanta], Jx Jy Jz infidelity [dimensionless]\n";
  sum << "run," << sw.axis << ",t_end,n0,n1,Jx,Jy,Jz,infidelity_end,infidelity_max,steady_plateau\n";
  bool ok = true;
  for (const auto& base : c.runs) {
    for (double v : sw.values) {
      RunSpec r = base;
      apply_axis(r, sw.axis, v);
      r.name = base.name + "__" + sw.axis + "=" + axis_label(v);
      RunResult res = execute(r, oracle);
      emit(c, res, out, json{{"axis", sw.axis}, {"value", v}});
      ok = converged(res) && ok;
      const auto& p = res.bloch.back();
      sum << base.name << "," << fmt_num(v) << "," << fmt_num(p.t) << "," << fmt_num(p.n0) << "," << fmt_num(p.n1) << ","
          << fmt_num(p.j.x) << "," << fmt_num(p.j.y) << "," << fmt_num(p.j.z) << "," << fmt_num(p.infidelity) << ","
          << fmt_num(res.bloch.max_infidelity()) << "," << (res.steady.used ? (res.steady.plateau ? "1" : "0") : "") << "\n";
    }
  }
  std::string body = sum.str();
  fs::path sp = out / (c.name + "_summary.csv");
  write_file(sp, body);
  json j{{"version", kVersion}, {"created", timestamp()}, {"config", c.raw}, {"digests", {{sp.filename().string(), sha256(body)}}}};
  write_file(out / (c.name + "_summary.json"), j.dump(2) + "\n");
  std::cout << "wrote " << sp.string() << "\n";
  return ok ? Ok : NotConverged;
}

int cmd_verify(bool flip) {
  auto t0 = std::chrono::steady_clock::now();
  VerifyOptions o;
  o.flip_kernel_sign = flip;
  bool ok = true;
  for (const auto& r : verify_suite(o)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " [" << r.detail << "]\n";
    ok = ok && r.passed;
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (ok ? "all checks passed" : "some checks failed") << " in " << fmt_num(s) << " s\n";
  return ok ? Ok : Failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identical-particle qubit simulator"};
  app.require_subcommand(1);
  std::string config, preset, out = "out";
  bool oracle = false;
  long seed = -1;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--config", config, "Scenario config (JSON)");
    s->add_option("--preset", preset, "Named figure preset");
    s->add_option("--out", out, "Output directory");
    s->add_flag("--with-oracle", oracle, "Add matrix-exponential oracle columns");
    s->add_option("--seed", seed, "Random seed (qec configs only)");
  };
  auto* run = app.add_subcommand("run", "Run a scenario config");
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "Run the sweep declared in a config");
  add_common(sweep);
  std::string axis;
  std::vector<double> values;
  sweep->add_option("--axis", axis, "Override the sweep axis");
  sweep->add_option("--values", values, "Override the sweep values");

  auto* qec = app.add_subcommand("qec", "Win-win measurement and Knill-Laflamme report");
  QecSpec q;
  std::string qout;
  qec->add_option("--epsilon", q.epsilon, "Error strength (0 picks the smallest unitary-valid value)");
  qec->add_option("--cutoff", q.cutoff, "Total-number truncation");
  qec->add_option("--trials", q.trials, "Random one-particle states");
  qec->add_option("--seed", q.seed, "Random seed");
  qec->add_option("--out", qout, "Also write qec.json to this directory");

  auto* verify = app.add_subcommand("verify", "Reduced-scale invariant suite");
  bool flip = false;
  verify->add_flag("--flip-kernel-sign", flip, "Test hook: negate the memory kernel before the oracle comparison");

  auto* pre = app.add_subcommand("presets", "List or write figure presets");
  pre->require_subcommand(1);
  pre->add_subcommand("list", "List preset names");
  auto* pw = pre->add_subcommand("write", "Write every preset as DIR/NAME.json");
  std::string pdir = "configs";
  pw->add_option("dir", pdir, "Target directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed() || sweep->parsed()) {
      Config c = load(config, preset);
      if (seed >= 0) {
        if (c.kind != "qec") throw Error(Error::Kind::Config, "--seed only applies to qec configs");
        c.qec.seed = std::uint64_t(seed);
      }
      if (run->parsed()) return cmd_run(c, out, oracle);
      if (!axis.empty() || !values.empty()) {
        if (axis.empty() || values.empty()) throw Error(Error::Kind::Config, "--axis and --values go together");
        const auto& ax = cfg::sweep_axes();
        if (std::find(ax.begin(), ax.end(), axis) == ax.end()) throw Error(Error::Kind::Config, "unknown axis '" + axis + "'");
        c.sweep = SweepSpec{axis, values};
      }
      return cmd_sweep(c, out, oracle);
    }
    if (qec->parsed()) return cmd_qec(q, qout, "qec");
    if (verify->parsed()) return cmd_verify(flip);
    if (pre->parsed()) {
      if (pw->parsed()) {
        fs::create_directories(pdir);
        for (const auto& [name, text] : presets()) write_file(fs::path(pdir) / (name + ".json"), text + "\n");
        std::cout << "wrote " << presets().size() << " presets to " << pdir << "\n";
      } else {
        for (const auto& [name, text] : presets())
          std::cout << name << "  " << json::parse(text).value("description", std::string()) << "\n";
      }
      return Ok;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind == Error::Kind::Config ? BadConfig : Failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Failure;
  }
  return Ok;
}
