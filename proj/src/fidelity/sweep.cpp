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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "gsforge/errors.hpp"
#include "gsforge/fidelity.hpp"

namespace gsforge {

namespace {

const std::set<std::string> kAxisNames{"tau", "fsq", "fcr", "fcnot", "fcz", "f2q", "fm",
                                       "t1",  "t2",  "k",   "n",     "b0",  "b1"};

std::size_t as_size(const std::string &name, double v) {
  const double r = std::round(v);
  if (r < 0 || std::abs(r - v) > 1e-9) throw ValidationError("axis " + name + " needs integer values");
  return static_cast<std::size_t>(r);
}

void apply_axis(SweepSpec &s, const std::string &name, double v) {
  auto &p = s.params;
  if (name == "tau") p.tau = v;
  else if (name == "fsq") p.f_sq = v;
  else if (name == "fcr") p.f_cr = v;
  else if (name == "fcnot") p.f_cnot = v;
  else if (name == "fcz") p.f_cz = v;
  else if (name == "fm") p.f_m = v;
  else if (name == "t1") p.t1 = v;
  else if (name == "t2") p.t2 = v;
  else if (name == "f2q") {
    // One two-qubit axis: FF ties CNOT and CR together, TF moves CZ.
    if (p.flavor == Flavor::FF) {
      p.f_cnot = v;
      p.f_cr = v;
    } else {
      p.f_cz = v;
    }
  } else if (name == "k") s.k = as_size(name, v);
  else if (name == "n") s.n = as_size(name, v);
  else if (name == "b0") s.b0 = as_size(name, v);
  else if (name == "b1") s.b1 = as_size(name, v);
  else throw ValidationError("unknown sweep axis: " + name);
}

double evaluate(const SweepSpec &s) {
  if (s.metric == "max_size") {
    if (s.protocol != "cluster") throw ValidationError("max_size is defined for clusters only");
    return double(max_cluster_size(s.k, s.params, s.f_min));
  }
  double f = 0.0;
  if (s.protocol == "cluster") f = cluster_fidelity(s.k, s.n, s.params).total;
  else if (s.protocol == "tree") f = tree_fidelity(s.b0, s.b1, s.params).total;
  else if (s.protocol == "rgs") f = rgs_fidelity(s.b0, s.params).total;
  else throw ValidationError("unknown sweep protocol: " + s.protocol);
  return s.metric == "infidelity" ? 1.0 - f : f;
}

std::string format9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::vector<double> Axis::values() const {
  if (steps < 2) throw ValidationError("axis " + name + " needs at least 2 steps");
  if (log && !(min > 0 && max > 0)) throw ValidationError("log axis " + name + " needs positive bounds");
  std::vector<double> v(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = double(i) / double(steps - 1);
    v[i] = log ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
    // Trim round-off so that grid points such as 0.995 are exact decimals.
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v[i]);
    v[i] = std::strtod(buf, nullptr);
  }
  v.back() = max;
  return v;
}

void SweepSpec::validate() const {
  if (axes.empty() || axes.size() > 2) throw ValidationError("a sweep needs one or two axes");
  for (const auto &a : axes) {
    if (!kAxisNames.count(a.name)) throw ValidationError("unknown sweep axis: " + a.name);
    if (a.steps < 2) throw ValidationError("axis " + a.name + " needs at least 2 steps");
  }
  if (axes.size() == 2 && axes[0].name == axes[1].name) throw ValidationError("sweep axes must differ");
  if (metric != "fidelity" && metric != "infidelity" && metric != "max_size")
    throw ValidationError("unknown metric: " + metric);
  if (protocol != "cluster" && protocol != "tree" && protocol != "rgs")
    throw ValidationError("unknown sweep protocol: " + protocol);
}

SweepTable sweep(const SweepSpec &s) {
  s.validate();
  std::vector<std::vector<double>> axis_values;
  for (const auto &a : s.axes) axis_values.push_back(a.values());
  const std::size_t outer = axis_values[0].size();
  const std::size_t inner = axis_values.size() > 1 ? axis_values[1].size() : 1;

  SweepTable t;
  for (const auto &a : s.axes) t.columns.push_back(a.name);
  t.columns.push_back(s.metric);
  t.rows.assign(outer * inner, {});

  auto fill = [&](std::size_t row) {
    SweepSpec cell = s;
    std::vector<double> r;
    apply_axis(cell, s.axes[0].name, axis_values[0][row / inner]);
    r.push_back(axis_values[0][row / inner]);
    if (axis_values.size() > 1) {
      apply_axis(cell, s.axes[1].name, axis_values[1][row % inner]);
      r.push_back(axis_values[1][row % inner]);
    }
    r.push_back(evaluate(cell));
    t.rows[row] = std::move(r);
  };

  // Rows are independent; each thread writes its own slots, so the output
  // order never depends on scheduling.
  const std::size_t total = t.rows.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), total / 64));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) fill(i);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < total; i += workers) fill(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto &th : pool) th.join();
    for (auto &e : errors)
      if (e) std::rethrow_exception(e);
  }
  return t;
}

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto &r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format9(r[i]);
    os << '\n';
  }
  return os.str();
}

SweepSpec figure_sweep(const std::string &fig) {
  SweepSpec s;
  const Axis tau_ff{"tau", 0.1e-6, 1.0e-6, 10, false};
  if (fig == "3a" || fig == "3b") {
    s.protocol = "cluster";
    s.k = 2;
    s.n = 1;
    s.params = DeviceParams::preset("ff-tableIII");
    s.axes = {{"fcnot", 0.99, 0.999, 10, false}, tau_ff};
    s.metric = fig == "3a" ? "infidelity" : "max_size";
  } else if (fig == "3c" || fig == "3d") {
    s.protocol = "cluster";
    s.k = 2;
    s.n = 1;
    s.params = DeviceParams::preset("tf-tableIII");
    s.axes = {{"fcz", 0.99, 0.999, 10, false}, tau_ff};
    s.metric = fig == "3c" ? "infidelity" : "max_size";
  } else if (fig == "6a" || fig == "6b") {
    s.protocol = "tree";
    s.b0 = 6;
    s.b1 = 1;
    s.params = DeviceParams::preset(fig == "6a" ? "ff-tableIV" : "tf-tableIV");
    s.axes = {{"f2q", 0.99, 0.999, 10, false}, tau_ff};
    s.metric = "fidelity";
  } else {
    throw ValidationError("unknown figure: " + fig + " (expected 3a 3b 3c 3d 6a 6b)");
  }
  return s;
}

}  // namespace gsforge
