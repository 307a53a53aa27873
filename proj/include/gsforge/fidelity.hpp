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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gsforge/ir.hpp"

namespace gsforge {

/// Device parameters. Times are in seconds. FF needs F_CR and F_CNOT, TF
/// needs F_CZ.
struct DeviceParams {
  Flavor flavor = Flavor::FF;
  double f_sq = 1.0;
  std::optional<double> f_cr, f_cnot, f_cz;
  double f_m = 1.0;
  double t1 = 0.0, t2 = 0.0;
  double tau = 0.0;
  std::optional<double> tau_cnot, tau_x, tau_0;
  /// Per-photon emission fidelity; absent means exactly 1.
  std::optional<double> f_emit;

  void validate() const;
  double two_qubit(TwoQubitKind k) const;  // throws if the flavor lacks it
  std::string to_json() const;

  /// ff-tableIII, tf-tableIII, ff-tableIV, tf-tableIV.
  static DeviceParams preset(const std::string &name);
  static std::vector<std::string> preset_names();
};

/// One factor base^exponent of a product-form estimate. `source` is one of
/// SQG, 2QG, measurement, idle, emission; `gate` names the specific base
/// (SQG, CNOT, CR, CZ, measurement, idle, emission).
struct Factor {
  std::string source;
  std::string gate;
  double base;
  double exponent;
};

struct FidelityReport {
  double total = 1.0;
  std::vector<Factor> factors;

  /// Drops zero exponents and computes the total in log space.
  static FidelityReport from_factors(std::vector<Factor> factors);
  std::string to_json() const;
};

double idle_fidelity(double tau, double t1, double t2);

FidelityReport cluster_fidelity(std::size_t k, std::size_t n, const DeviceParams &p);
double cluster_ratio(std::size_t k, const DeviceParams &p_ff, const DeviceParams &p_tf);
double tree_arm_fidelity_ff(std::size_t b1, const DeviceParams &p);
FidelityReport tree_fidelity(std::size_t b0, std::size_t b1, const DeviceParams &p);
FidelityReport rgs_fidelity(std::size_t b0, const DeviceParams &p);
double tree_ratio(std::size_t b1, const DeviceParams &p_ff, const DeviceParams &p_tf);

/// Largest N = k*n with cluster_fidelity >= f_min (ties count); 0 if n = 1
/// already fails.
std::size_t max_cluster_size(std::size_t k, const DeviceParams &p, double f_min);

struct BudgetEntry {
  std::string removed;  // "none", "SQG", "2QG", "measurement", "idle"
  FidelityReport report;
};

/// Baseline tree fidelity followed by the four one-group-removed variants.
std::vector<BudgetEntry> error_budget(std::size_t b0, std::size_t b1, const DeviceParams &p);

/// Product-form estimate built from a lowered circuit's census (the
/// disentangle stage excluded) with the same factor order as the closed forms.
FidelityReport census_consistency(const CircuitIR &c, const DeviceParams &p);

struct Axis {
  std::string name;  // tau fsq fcr fcnot fcz f2q fm t1 t2 k n b0 b1
  double min = 0.0, max = 0.0;
  std::size_t steps = 2;
  bool log = false;
  std::vector<double> values() const;
};

struct SweepSpec {
  std::string protocol = "cluster";  // cluster | tree | rgs
  std::size_t k = 2, n = 1, b0 = 6, b1 = 1;
  std::vector<Axis> axes;
  DeviceParams params;
  std::string metric = "fidelity";  // fidelity | infidelity | max_size
  double f_min = 0.8;

  void validate() const;
};

struct SweepTable {
  std::vector<std::string> columns;  // axis names then the metric
  std::vector<std::vector<double>> rows;
  std::string to_csv() const;
};

/// Row-major grid (first axis outermost).
SweepTable sweep(const SweepSpec &s);

/// Ready-made figure grids: 3a 3b 3c 3d 6a 6b.
SweepSpec figure_sweep(const std::string &fig);

}  // namespace gsforge
