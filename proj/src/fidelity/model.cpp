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

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "gsforge/errors.hpp"
#include "gsforge/fidelity.hpp"
#include "gsforge/protocols.hpp"

namespace gsforge {

namespace {

void check_fidelity(const char *name, double f) {
  if (!(f > 0.0 && f <= 1.0)) throw ValidationError(std::string(name) + " must be in (0, 1]");
}

// Shared by every estimate so that identical factor lists give identical bits.
double product_in_log_space(const std::vector<Factor> &fs) {
  double acc = 0.0;
  for (const auto &f : fs) acc += f.exponent * std::log(f.base);
  return std::exp(acc);
}

struct Exponents {
  double sqg = 0, cnot = 0, cr = 0, cz = 0, meas = 0, idle = 0, photons = 0;
};

FidelityReport report_from(const Exponents &e, const DeviceParams &p) {
  std::vector<Factor> fs;
  fs.push_back({"SQG", "SQG", p.f_sq, e.sqg});
  if (e.cnot != 0) fs.push_back({"2QG", "CNOT", p.two_qubit(TwoQubitKind::CNOT), e.cnot});
  if (e.cr != 0) fs.push_back({"2QG", "CR", p.two_qubit(TwoQubitKind::CR), e.cr});
  if (e.cz != 0) fs.push_back({"2QG", "CZ", p.two_qubit(TwoQubitKind::CZ), e.cz});
  fs.push_back({"measurement", "measurement", p.f_m, e.meas});
  fs.push_back({"idle", "idle", idle_fidelity(p.tau, p.t1, p.t2), e.idle});
  if (p.f_emit) fs.push_back({"emission", "emission", *p.f_emit, e.photons});
  return FidelityReport::from_factors(std::move(fs));
}

Exponents cluster_exponents(std::size_t k, std::size_t n, Flavor f) {
  const double N = double(k * n), nn = double(n);
  Exponents e;
  if (f == Flavor::FF) {
    e.sqg = 3 * N - 3 * nn;
    e.cnot = N;
    e.cr = N - nn;
  } else {
    e.sqg = 3 * N;
    e.cz = 2 * N - nn;
  }
  e.idle = N;
  e.photons = N;
  return e;
}

Exponents tree_exponents(std::size_t b0, std::size_t b1, Flavor f) {
  const double N = double(b0 * (b1 + 1)), B = double(b0);
  Exponents e;
  if (f == Flavor::FF) {
    e.sqg = N + 2 * B + 1;
    e.cnot = N;
    e.cr = B;
  } else {
    e.sqg = N + 3 * B + 1;
    e.cz = N + B;
  }
  e.meas = B;
  e.idle = N;
  e.photons = N;
  return e;
}

}  // namespace

void DeviceParams::validate() const {
  check_fidelity("F_SQ", f_sq);
  check_fidelity("F_m", f_m);
  for (auto [name, v] : {std::pair{"F_CR", f_cr}, {"F_CNOT", f_cnot}, {"F_CZ", f_cz}})
    if (v) check_fidelity(name, *v);
  if (f_emit) check_fidelity("F_emit", *f_emit);
  if (flavor == Flavor::FF && (!f_cr || !f_cnot))
    throw ValidationError("fixed-frequency parameters need F_CR and F_CNOT");
  if (flavor == Flavor::TF && !f_cz) throw ValidationError("tunable-frequency parameters need F_CZ");
  if (!(t1 > 0) || !(t2 > 0)) throw ValidationError("T1 and T2 must be > 0");
  if (!(tau >= 0)) throw ValidationError("tau must be >= 0");
  for (auto [name, v] : {std::pair{"tau_cnot", tau_cnot}, {"tau_x", tau_x}, {"tau_0", tau_0}})
    if (v && !(*v > 0)) throw ValidationError(std::string(name) + " must be > 0");
}

double DeviceParams::two_qubit(TwoQubitKind k) const {
  const std::optional<double> *v = nullptr;
  switch (k) {
    case TwoQubitKind::CNOT: v = &f_cnot; break;
    case TwoQubitKind::CR: v = &f_cr; break;
    case TwoQubitKind::CZ: v = &f_cz; break;
  }
  if (!*v) throw ValidationError("no " + to_string(k) + " fidelity for " + to_string(flavor) + " parameters");
  return **v;
}

std::string DeviceParams::to_json() const {
  nlohmann::json j;
  j["flavor"] = to_string(flavor);
  j["fsq"] = f_sq;
  if (f_cr) j["fcr"] = *f_cr;
  if (f_cnot) j["fcnot"] = *f_cnot;
  if (f_cz) j["fcz"] = *f_cz;
  j["fm"] = f_m;
  j["t1"] = t1;
  j["t2"] = t2;
  j["tau"] = tau;
  if (f_emit) j["femit"] = *f_emit;
  return j.dump();
}

std::vector<std::string> DeviceParams::preset_names() {
  return {"ff-tableIII", "tf-tableIII", "ff-tableIV", "tf-tableIV"};
}

DeviceParams DeviceParams::preset(const std::string &name) {
  DeviceParams p;
  p.f_sq = 0.9995;
  if (name == "ff-tableIII" || name == "ff-tableIV") {
    p.flavor = Flavor::FF;
    p.t1 = 60e-6;
    p.t2 = 55e-6;
    p.tau = 0.3e-6;
    if (name == "ff-tableIII") {
      p.f_cr = 0.991;
      p.f_cnot = 0.928;
    } else {
      p.f_cr = 0.995;
      p.f_cnot = 0.995;
      p.f_m = 0.99;
    }
  } else if (name == "tf-tableIII" || name == "tf-tableIV") {
    p.flavor = Flavor::TF;
    p.t1 = 44e-6;
    p.t2 = 20e-6;
    p.tau = 0.1e-6;
    p.f_cz = 0.995;
    if (name == "tf-tableIV") p.f_m = 0.99;
  } else {
    throw ValidationError("unknown preset: " + name);
  }
  return p;
}

FidelityReport FidelityReport::from_factors(std::vector<Factor> factors) {
  FidelityReport r;
  for (auto &f : factors)
    if (f.exponent != 0) r.factors.push_back(std::move(f));
  r.total = product_in_log_space(r.factors);
  return r;
}

std::string FidelityReport::to_json() const {
  nlohmann::json j;
  j["total"] = total;
  j["factors"] = nlohmann::json::array();
  for (const auto &f : factors)
    j["factors"].push_back({{"source", f.source}, {"gate", f.gate}, {"base", f.base}, {"exponent", f.exponent}});
  return j.dump();
}

double idle_fidelity(double tau, double t1, double t2) {
  if (!(tau >= 0)) throw ValidationError("idle_fidelity: tau must be >= 0");
  if (!(t1 > 0) || !(t2 > 0)) throw ValidationError("idle_fidelity: T1 and T2 must be > 0");
  return 0.5 + (std::exp(-tau / t1) + 2.0 * std::exp(-tau / t2)) / 6.0;
}

FidelityReport cluster_fidelity(std::size_t k, std::size_t n, const DeviceParams &p) {
  if (k < 1 || n < 1) throw ValidationError("cluster_fidelity needs k >= 1 and n >= 1");
  p.validate();
  return report_from(cluster_exponents(k, n, p.flavor), p);
}

double cluster_ratio(std::size_t k, const DeviceParams &p_ff, const DeviceParams &p_tf) {
  if (k < 1) throw ValidationError("cluster_ratio needs k >= 1");
  p_ff.validate();
  p_tf.validate();
  if (p_ff.flavor != Flavor::FF || p_tf.flavor != Flavor::TF)
    throw ValidationError("cluster_ratio takes FF parameters then TF parameters");
  return std::pow(p_ff.f_sq, -3.0 / double(k)) * idle_fidelity(p_ff.tau, p_ff.t1, p_ff.t2) /
         idle_fidelity(p_tf.tau, p_tf.t1, p_tf.t2);
}

double tree_arm_fidelity_ff(std::size_t b1, const DeviceParams &p) {
  p.validate();
  const double b = double(b1);
  const std::vector<Factor> fs{{"SQG", "SQG", p.f_sq, b + 3},
                               {"2QG", "CNOT", p.two_qubit(TwoQubitKind::CNOT), b + 1},
                               {"2QG", "CR", p.two_qubit(TwoQubitKind::CR), 1},
                               {"measurement", "measurement", p.f_m, 1},
                               {"idle", "idle", idle_fidelity(p.tau, p.t1, p.t2), b + 1}};
  return product_in_log_space(fs);
}

FidelityReport tree_fidelity(std::size_t b0, std::size_t b1, const DeviceParams &p) {
  if (b0 < 1) throw ValidationError("tree_fidelity needs b0 >= 1");
  p.validate();
  return report_from(tree_exponents(b0, b1, p.flavor), p);
}

FidelityReport rgs_fidelity(std::size_t b0, const DeviceParams &p) {
  if (b0 < 2) throw ValidationError("rgs_fidelity needs b0 >= 2");
  p.validate();
  auto e = tree_exponents(b0, 1, p.flavor);
  e.sqg += 1;  // basis change before the root's Y readout
  e.meas += 1;
  return report_from(e, p);
}

double tree_ratio(std::size_t b1, const DeviceParams &p_ff, const DeviceParams &p_tf) {
  p_ff.validate();
  p_tf.validate();
  if (p_ff.flavor != Flavor::FF || p_tf.flavor != Flavor::TF)
    throw ValidationError("tree_ratio takes FF parameters then TF parameters");
  return std::pow(p_ff.f_sq, -1.0 / double(b1 + 1)) * idle_fidelity(p_ff.tau, p_ff.t1, p_ff.t2) /
         idle_fidelity(p_tf.tau, p_tf.t1, p_tf.t2);
}

std::size_t max_cluster_size(std::size_t k, const DeviceParams &p, double f_min) {
  if (k < 1) throw ValidationError("max_cluster_size needs k >= 1");
  if (!(f_min > 0 && f_min < 1)) throw ValidationError("F_min must be in (0, 1)");
  // log F is linear in n, so the answer is floor(log F_min / log F(k,1));
  // the direct evaluation below settles round-off at the boundary.
  const double per_cycle = std::log(cluster_fidelity(k, 1, p).total);
  if (per_cycle == 0.0) throw ValidationError("max_cluster_size: noiseless parameters give no bound");
  auto ok = [&](std::size_t n) { return cluster_fidelity(k, n, p).total >= f_min; };
  std::size_t n = static_cast<std::size_t>(std::floor(std::log(f_min) / per_cycle));
  n = std::max<std::size_t>(n, 1);
  while (n > 0 && !ok(n)) --n;
  while (ok(n + 1)) ++n;
  return k * n;
}

std::vector<BudgetEntry> error_budget(std::size_t b0, std::size_t b1, const DeviceParams &p) {
  const auto base = tree_fidelity(b0, b1, p);
  std::vector<BudgetEntry> out{{"none", base}};
  for (const char *group : {"SQG", "2QG", "measurement", "idle"}) {
    auto fs = base.factors;
    for (auto &f : fs)
      if (f.source == group) f.base = 1.0;
    out.push_back({group, FidelityReport::from_factors(std::move(fs))});
  }
  return out;
}

FidelityReport census_consistency(const CircuitIR &c, const DeviceParams &p) {
  p.validate();
  const auto g = census(c, std::set<Stage>{Stage::Prepare, Stage::Generate, Stage::Convert});
  Exponents e;
  e.sqg = double(g["SQG"]);
  e.cnot = double(g["CNOT"]);
  e.cr = double(g["CR"]);
  e.cz = double(g["CZ"]);
  e.meas = double(g["MEASURE"]);
  e.idle = g.idle_windows;
  e.photons = double(g["EMIT"]);
  return report_from(e, p);
}

}  // namespace gsforge
