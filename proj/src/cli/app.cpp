// Copyright 2026 The gsforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsforge/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gsforge/clifford.hpp"
#include "gsforge/errors.hpp"
#include "gsforge/fidelity.hpp"
#include "gsforge/oracle.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge::cli {
namespace {

enum class Kind { Text, Count, Real };

struct KeySpec {
  const char *name;
  Kind kind;
  const char *help;
};

// "axis" is handled separately (repeatable).
const KeySpec kSpecs[] = {
    {"protocol", Kind::Text, "cluster | tree | rgs | shor"},
    {"k", Kind::Count, "cluster: number of PGUs"},
    {"n", Kind::Count, "cluster: emission cycles per PGU"},
    {"b0", Kind::Count, "tree/rgs: root branching"},
    {"b1", Kind::Count, "tree: second-level branching"},
    {"flavor", Kind::Text, "ff | tf"},
    {"strategy", Kind::Text, "parallel | sequential"},
    {"aux-basis", Kind::Text, "tree: auxiliary release basis x | y | z"},
    {"preset", Kind::Text, "ff-tableIII | tf-tableIII | ff-tableIV | tf-tableIV"},
    {"tau", Kind::Real, "gate time in seconds"},
    {"fsq", Kind::Real, "single-qubit gate fidelity"},
    {"fcr", Kind::Real, "cross-resonance fidelity"},
    {"fcnot", Kind::Real, "CNOT fidelity"},
    {"fcz", Kind::Real, "CZ fidelity"},
    {"fm", Kind::Real, "measurement fidelity"},
    {"femit", Kind::Real, "per-photon emission fidelity"},
    {"t1", Kind::Real, "T1 in seconds"},
    {"t2", Kind::Real, "T2 in seconds"},
    {"trials", Kind::Count, "oracle/verify: number of sampled trials"},
    {"seed", Kind::Count, "RNG seed"},
    {"method", Kind::Text, "oracle: dense | pauli_mc"},
    {"fig", Kind::Text, "sweep: 3a 3b 3c 3d 6a 6b"},
    {"metric", Kind::Text, "sweep: fidelity | infidelity | max_size"},
    {"fmin", Kind::Real, "sweep: threshold for max_size"},
    {"format", Kind::Text, "json | csv | text"},
    {"out", Kind::Text, "write the result to this file"},
};

const KeySpec *spec_of(const std::string &key) {
  for (const auto &s : kSpecs)
    if (key == s.name) return &s;
  return nullptr;
}

// Tolerance used for the oracle's band check.
constexpr double kOracleBand = 0.015;

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---- parameter assembly ----------------------------------------------------

Flavor flavor_setting(const Settings &s, const std::string &fallback) {
  try {
    return flavor_from_string(s.str("flavor", fallback));
  } catch (const std::exception &e) {
    throw ValidationError(std::string("--flavor: ") + e.what());
  }
}

/// Preset (or the flavor's Table III defaults) with individual overrides.
DeviceParams device(const Settings &s) {
  DeviceParams p;
  if (s.has("preset")) {
    try {
      p = DeviceParams::preset(s.str("preset", ""));
    } catch (const std::exception &e) {
      throw ValidationError(std::string("--preset: ") + e.what());
    }
    if (s.has("flavor") && flavor_setting(s, "ff") != p.flavor)
      throw ValidationError("--flavor conflicts with --preset " + s.str("preset", ""));
  } else {
    const Flavor f = flavor_setting(s, "ff");
    p = DeviceParams::preset(f == Flavor::FF ? "ff-tableIII" : "tf-tableIII");
  }
  if (s.has("tau")) p.tau = s.real("tau");
  if (s.has("fsq")) p.f_sq = s.real("fsq");
  if (s.has("fcr")) p.f_cr = s.real("fcr");
  if (s.has("fcnot")) p.f_cnot = s.real("fcnot");
  if (s.has("fcz")) p.f_cz = s.real("fcz");
  if (s.has("fm")) p.f_m = s.real("fm");
  if (s.has("femit")) p.f_emit = s.real("femit");
  if (s.has("t1")) p.t1 = s.real("t1");
  if (s.has("t2")) p.t2 = s.real("t2");
  p.validate();
  return p;
}

Strategy strategy(const Settings &s) {
  try {
    return strategy_from_string(s.str("strategy", "parallel"));
  } catch (const std::exception &e) {
    throw ValidationError(std::string("--strategy: ") + e.what());
  }
}

TreeOptions tree_options(const Settings &s) {
  TreeOptions opt;
  const std::string b = s.str("aux-basis", "x");
  if (b == "x" || b == "X") opt.aux_basis = Basis::X;
  else if (b == "y" || b == "Y") opt.aux_basis = Basis::Y;
  else if (b == "z" || b == "Z") opt.aux_basis = Basis::Z;
  else throw ValidationError("--aux-basis: expected x, y or z, got '" + b + "'");
  return opt;
}

std::string protocol(const Settings &s) {
  const std::string p = s.required("protocol");
  if (p != "cluster" && p != "tree" && p != "rgs" && p != "shor")
    throw ValidationError("--protocol: expected cluster, tree, rgs or shor, got '" + p + "'");
  return p;
}

/// Lowered circuit for the selected protocol and flavor.
CircuitIR circuit(const Settings &s, Flavor f) {
  const std::string proto = protocol(s);
  if (proto == "cluster") return compile_cluster(s.size("k", 0), s.size("n", 0), f);
  if (proto == "tree")
    return compile_tree(s.size("b0", 0), s.size("b1", 0), f, strategy(s), tree_options(s));
  if (proto == "rgs") return compile_rgs(s.size("b0", 0), f, strategy(s));
  return lower(compile_shor_logical(), f);
}

/// Flavor for commands that need no device figures.
Flavor circuit_flavor(const Settings &s) {
  if (s.has("preset")) return device(s).flavor;
  return flavor_setting(s, "ff");
}

Axis parse_axis(const std::string &text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5)
    throw ValidationError("--axis: expected name:min:max:steps[:log], got '" + text + "'");
  Axis a;
  a.name = parts[0];
  Settings tmp;
  tmp.set("axis.min", parts[1]);
  tmp.set("axis.max", parts[2]);
  tmp.set("axis.steps", parts[3]);
  a.min = tmp.real("axis.min");
  a.max = tmp.real("axis.max");
  a.steps = tmp.size("axis.steps", 2);
  if (parts.size() == 5) {
    if (parts[4] != "log" && parts[4] != "lin")
      throw ValidationError("--axis: scale must be 'log' or 'lin', got '" + parts[4] + "'");
    a.log = parts[4] == "log";
  }
  return a;
}

// ---- commands ----------------------------------------------------------------

struct Outcome {
  std::string body;
  int code = kOk;
};

std::string format(const Settings &s, const std::string &fallback,
                   std::initializer_list<const char *> allowed) {
  const std::string f = s.str("format", fallback);
  for (const char *a : allowed)
    if (f == a) return f;
  std::string list;
  for (const char *a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw ValidationError("--format: expected one of " + list + ", got '" + f + "'");
}

Outcome cmd_compile(const Settings &s) {
  const CircuitIR c = circuit(s, circuit_flavor(s));
  const std::string fmt = format(s, "text", {"text", "json", "csv"});
  const GateCounts counts = census(c);
  if (fmt == "text") return {c.to_text()};
  if (fmt == "csv") {
    std::string out = "kind,count\n";
    std::istringstream in(counts.to_text());
    for (std::string kind, n; in >> kind >> n;) out += kind + "," + n + "\n";
    return {out};
  }
  nlohmann::ordered_json j;
  j["header"] = nlohmann::json::parse(c.header_json());
  j["census"] = nlohmann::json::parse(counts.to_json());
  auto &body = j["instructions"] = nlohmann::json::array();
  for (const auto &ins : c.instructions()) body.push_back(instruction_text(c, ins));
  return {j.dump(2) + "\n"};
}

Outcome cmd_verify(const Settings &s) {
  const CircuitIR c = circuit(s, circuit_flavor(s));
  const std::string fmt = format(s, "text", {"text", "json"});
  if (protocol(s) == "shor") {
    const ShorCheck r = check_shor_logical(c);
    const int code = r.all_pass ? kOk : kRejected;
    if (fmt == "json") {
      nlohmann::ordered_json j;
      j["all_pass"] = r.all_pass;
      j["branches_checked"] = r.branches;
      j["failure"] = r.failure ? nlohmann::ordered_json(*r.failure) : nlohmann::ordered_json();
      return {j.dump(2) + "\n", code};
    }
    return {(r.all_pass ? "PASS" : "FAIL: " + r.failure.value_or("")) + " (" +
                std::to_string(r.branches) + " branches)\n",
            code};
  }
  const VerifyMode mode = s.has("trials") ? VerifyMode::sampled(s.size("trials", 0), s.u64("seed", 1))
                                          : VerifyMode::exhaustive();
  if (!mode.exhaustive_branches && mode.trials == 0) throw ValidationError("--trials: must be positive");
  const VerificationReport r = verify(c, target_graph(c), mode);
  const int code = r.all_pass ? kOk : kRejected;
  if (fmt == "json") return {r.to_json() + "\n", code};
  std::string out = r.all_pass ? "PASS" : "FAIL";
  out += " (" + std::to_string(r.branches_checked) + " branches)\n";
  if (r.first_failure) out += "reason: " + r.first_failure->reason + "\n";
  return {out, code};
}

FidelityReport estimate_report(const Settings &s, const DeviceParams &p) {
  const std::string proto = protocol(s);
  if (proto == "cluster") return cluster_fidelity(s.size("k", 0), s.size("n", 0), p);
  // The closed forms describe the parallel schedules; anything else goes
  // through the compiled circuit's gate census.
  const bool parallel = strategy(s) == Strategy::Parallel;
  if (proto == "tree" && parallel && tree_options(s).aux_basis == Basis::X)
    return tree_fidelity(s.size("b0", 0), s.size("b1", 0), p);
  if (proto == "rgs" && parallel) return rgs_fidelity(s.size("b0", 0), p);
  return census_consistency(circuit(s, p.flavor), p);
}

std::string report_csv(const FidelityReport &r) {
  std::string out = "source,gate,base,exponent\n";
  for (const auto &f : r.factors)
    out += f.source + "," + f.gate + "," + general(f.base) + "," + general(f.exponent) + "\n";
  out += "total,," + general(r.total) + ",1\n";
  return out;
}

Outcome cmd_estimate(const Settings &s) {
  const DeviceParams p = device(s);
  const std::string fmt = format(s, "text", {"text", "json", "csv"});
  const FidelityReport r = estimate_report(s, p);
  if (fmt == "json") return {r.to_json() + "\n"};
  if (fmt == "csv") return {report_csv(r)};
  return {fixed(r.total, 3) + "\n"};
}

Outcome cmd_sweep(const Settings &s) {
  SweepSpec spec;
  if (s.has("fig")) {
    try {
      spec = figure_sweep(s.str("fig", ""));
    } catch (const std::exception &e) {
      throw ValidationError(std::string("--fig: ") + e.what());
    }
    if (!s.axes().empty()) spec.axes.clear();
  } else {
    spec.protocol = protocol(s);
  }
  // A figure keeps its own device unless a preset or flavor replaces it;
  // single figures always override.
  if (s.has("preset") || s.has("flavor") || !s.has("fig")) {
    spec.params = device(s);
  } else {
    DeviceParams &p = spec.params;
    if (s.has("tau")) p.tau = s.real("tau");
    if (s.has("fsq")) p.f_sq = s.real("fsq");
    if (s.has("fcr")) p.f_cr = s.real("fcr");
    if (s.has("fcnot")) p.f_cnot = s.real("fcnot");
    if (s.has("fcz")) p.f_cz = s.real("fcz");
    if (s.has("fm")) p.f_m = s.real("fm");
    if (s.has("femit")) p.f_emit = s.real("femit");
    if (s.has("t1")) p.t1 = s.real("t1");
    if (s.has("t2")) p.t2 = s.real("t2");
    p.validate();
  }
  if (s.has("protocol")) spec.protocol = protocol(s);
  if (s.has("k")) spec.k = s.size("k", 0);
  if (s.has("n")) spec.n = s.size("n", 0);
  if (s.has("b0")) spec.b0 = s.size("b0", 0);
  if (s.has("b1")) spec.b1 = s.size("b1", 0);
  if (s.has("metric")) spec.metric = s.str("metric", "");
  if (s.has("fmin")) spec.f_min = s.real("fmin");
  for (const auto &a : s.axes()) spec.axes.push_back(parse_axis(a));
  if (spec.axes.empty()) throw ValidationError("missing required setting: axis (--axis or --fig)");

  const SweepTable t = sweep(spec);
  const std::string fmt = format(s, "csv", {"csv", "json", "text"});
  if (fmt == "csv") return {t.to_csv()};
  if (fmt == "json") {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    return {j.dump() + "\n"};
  }
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%14s", t.columns[i].c_str());
    out += buf;
  }
  out += "\n";
  for (const auto &row : t.rows) {
    for (double v : row) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%14.6g", v);
      out += buf;
    }
    out += "\n";
  }
  return {out};
}

Outcome cmd_budget(const Settings &s) {
  const DeviceParams p = device(s);
  if (s.has("protocol") && protocol(s) != "tree")
    throw ValidationError("--protocol: the error budget is defined for trees only");
  const auto rows = error_budget(s.size("b0", 0), s.size("b1", 0), p);
  const std::string fmt = format(s, "text", {"text", "json", "csv"});
  if (fmt == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto &r : rows) {
      nlohmann::ordered_json e;
      e["removed"] = r.removed;
      e["report"] = nlohmann::ordered_json::parse(r.report.to_json());
      j.push_back(e);
    }
    return {j.dump(2) + "\n"};
  }
  std::string out = fmt == "csv" ? "removed,total\n" : "";
  for (const auto &r : rows) {
    if (fmt == "csv") {
      out += r.removed + "," + general(r.report.total) + "\n";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%-12s %.5f\n", r.removed.c_str(), r.report.total);
      out += buf;
    }
  }
  return {out};
}

Outcome cmd_oracle(const Settings &s) {
  const DeviceParams p = device(s);
  const CircuitIR c = circuit(s, p.flavor);
  const std::string m = s.str("method", "dense");
  OracleMethod method;
  if (m == "dense") {
    method = OracleMethod::dense();
  } else if (m == "pauli_mc") {
    const std::size_t trials = s.size("trials", 100000);
    if (trials == 0) throw ValidationError("--trials: must be positive");
    method = OracleMethod::pauli_mc(trials, s.u64("seed", 1));
  } else {
    throw ValidationError("--method: expected dense or pauli_mc, got '" + m + "'");
  }
  if (protocol(s) == "shor") throw ValidationError("--protocol: the oracle needs a graph-state target");
  const OracleResult r = noisy_state_fidelity(c, p, method);
  const bool in_band = !r.analytic || std::abs(r.estimate - *r.analytic) <= kOracleBand;
  const int code = in_band ? kOk : kRejected;
  const std::string fmt = format(s, "json", {"json", "text", "csv"});
  if (fmt == "json") return {r.to_json() + "\n", code};
  const std::string analytic = r.analytic ? general(*r.analytic) : "";
  const std::string delta = r.analytic ? general(r.estimate - *r.analytic) : "";
  if (fmt == "csv")
    return {"method,trials,estimate,std_err,analytic,delta\n" + m + "," + std::to_string(r.trials) + "," +
                general(r.estimate) + "," + general(r.std_err) + "," + analytic + "," + delta + "\n",
            code};
  std::string out = fixed(r.estimate, 5) + " +/- " + fixed(r.std_err, 5);
  if (r.analytic) out += " (analytic " + fixed(*r.analytic, 5) + ", delta " + fixed(r.estimate - *r.analytic, 5) + ")";
  return {out + "\n", code};
}

}  // namespace

// ---- Settings ------------------------------------------------------------------

const std::vector<std::string> &Settings::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v;
    for (const auto &s : kSpecs) v.emplace_back(s.name);
    v.emplace_back("axis");
    return v;
  }();
  return k;
}

void Settings::set(const std::string &key, const std::string &value) { values_[key] = value; }

void Settings::merge_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw ValidationError("--config: malformed JSON in '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw ValidationError("--config: top level must be an object");
  for (const auto &[key, value] : j.items()) {
    if (key == "axis") {
      if (!axes_.empty()) continue;  // flags win
      if (value.is_string()) {
        axes_.push_back(value.get<std::string>());
      } else if (value.is_array()) {
        for (const auto &a : value) {
          if (!a.is_string()) throw ValidationError("config key 'axis': expected strings");
          axes_.push_back(a.get<std::string>());
        }
      } else {
        throw ValidationError("config key 'axis': expected a string or an array of strings");
      }
      continue;
    }
    const KeySpec *spec = spec_of(key);
    if (!spec) throw ValidationError("unknown config key '" + key + "'");
    if (has(key)) continue;
    switch (spec->kind) {
      case Kind::Text:
        if (!value.is_string()) throw ValidationError("config key '" + key + "': expected a string");
        set(key, value.get<std::string>());
        break;
      case Kind::Count:
        if (!value.is_number_unsigned()) throw ValidationError("config key '" + key + "': expected a non-negative integer");
        set(key, std::to_string(value.get<unsigned long long>()));
        break;
      case Kind::Real:
        if (!value.is_number()) throw ValidationError("config key '" + key + "': expected a number");
        set(key, value.dump());
        break;
    }
  }
}

std::string Settings::str(const std::string &key, const std::string &fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string Settings::required(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ValidationError("missing required setting: " + key + " (--" + key + ")");
  return it->second;
}

unsigned long long Settings::u64(const std::string &key, unsigned long long fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string &v = it->second;
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    if (v.empty() || v[0] == '-' || v[0] == '+') throw std::invalid_argument(v);
    out = std::stoull(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size())
    throw ValidationError("--" + key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

std::size_t Settings::size(const std::string &key, std::size_t fallback) const {
  return static_cast<std::size_t>(u64(key, fallback));
}

double Settings::real(const std::string &key) const {
  const std::string v = required(key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(out))
    throw ValidationError("--" + key + ": expected a number, got '" + v + "'");
  return out;
}

// ---- entry point ---------------------------------------------------------------

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"gsforge: photonic graph-state protocols, verification and fidelity estimates", "gsforge"};
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flags;
  std::vector<std::string> axes;
  std::string config;
  for (const auto &spec : kSpecs) app.add_option(std::string("--") + spec.name, flags[spec.name], spec.help);
  app.add_option("--axis", axes, "sweep axis name:min:max:steps[:log] (repeatable)");
  app.add_option("--config", config, "JSON file whose keys are flag names");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"compile", "print the lowered circuit"},
      {"verify", "check every measurement branch against the target state"},
      {"estimate", "analytic fidelity estimate"},
      {"sweep", "fidelity over a parameter grid"},
      {"budget", "tree error budget"},
      {"oracle", "noisy simulation compared with the analytic estimate"},
  };
  for (const auto &[name, help] : commands) app.add_subcommand(name, help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << "run 'gsforge --help' for usage\n";
    return kInvalid;
  }

  try {
    Settings s;
    for (const auto &spec : kSpecs)
      if (app.count(std::string("--") + spec.name) > 0) s.set(spec.name, flags[spec.name]);
    for (const auto &a : axes) s.add_axis(a);
    if (!config.empty()) s.merge_config_file(config);

    const std::string cmd = app.get_subcommands().front()->get_name();
    Outcome o;
    if (cmd == "compile") o = cmd_compile(s);
    else if (cmd == "verify") o = cmd_verify(s);
    else if (cmd == "estimate") o = cmd_estimate(s);
    else if (cmd == "sweep") o = cmd_sweep(s);
    else if (cmd == "budget") o = cmd_budget(s);
    else o = cmd_oracle(s);

    if (s.has("out")) {
      std::ofstream f(s.str("out", ""), std::ios::binary);
      if (!f) throw ValidationError("--out: cannot write '" + s.str("out", "") + "'");
      f << o.body;
    } else {
      out << o.body;
    }
    if (o.code == kRejected) err << (cmd == "oracle" ? "oracle estimate outside the analytic band\n"
                                                      : "verification failed\n");
    return o.code;
  } catch (const std::exception &e) {
    // ValidationError and ProtocolError both describe bad input here.
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace gsforge::cli
