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

#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "gsforge/errors.hpp"
#include "gsforge/fidelity.hpp"
#include "gsforge/protocols.hpp"

using namespace gsforge;

namespace {

// Independent reference: the idle factor written out in long double.
long double idle_ref(long double tau, long double t1, long double t2) {
  return 0.5L + (std::exp(-tau / t1) + 2.0L * std::exp(-tau / t2)) / 6.0L;
}

DeviceParams ff(double fcnot, double fcr, double tau, double fm = 1.0) {
  DeviceParams p = DeviceParams::preset("ff-tableIII");
  p.f_cnot = fcnot;
  p.f_cr = fcr;
  p.tau = tau;
  p.f_m = fm;
  return p;
}

DeviceParams tf(double fcz, double tau, double fm = 1.0) {
  DeviceParams p = DeviceParams::preset("tf-tableIII");
  p.f_cz = fcz;
  p.tau = tau;
  p.f_m = fm;
  return p;
}

DeviceParams perfect(Flavor f) {
  DeviceParams p;
  p.flavor = f;
  p.f_cr = p.f_cnot = p.f_cz = 1.0;
  p.t1 = 60e-6;
  p.t2 = 55e-6;
  p.tau = 0.0;
  return p;
}

// Random valid parameters of one flavor for property checks.
DeviceParams random_params(std::mt19937_64 &rng, Flavor f) {
  std::uniform_real_distribution<double> fid(0.95, 0.9999), t(20e-6, 100e-6), tau(0.05e-6, 1e-6);
  DeviceParams p;
  p.flavor = f;
  p.f_sq = fid(rng);
  p.f_cr = fid(rng);
  p.f_cnot = fid(rng);
  p.f_cz = fid(rng);
  p.f_m = fid(rng);
  p.t1 = t(rng);
  p.t2 = std::min(t(rng), 2 * p.t1);
  p.tau = tau(rng);
  return p;
}

}  // namespace

// ------------------------------------------------------------------- idle

TEST(Idle, LimitsAndSpotValue) {
  EXPECT_DOUBLE_EQ(idle_fidelity(0, 60e-6, 55e-6), 1.0);
  EXPECT_NEAR(idle_fidelity(1.0, 60e-6, 55e-6), 0.5, 1e-15);
  EXPECT_NEAR(idle_fidelity(0.3e-6, 60e-6, 55e-6), 0.997356, 5e-7);
  EXPECT_NEAR(idle_fidelity(0.3e-6, 60e-6, 55e-6), double(idle_ref(0.3e-6L, 60e-6L, 55e-6L)), 1e-15);
  EXPECT_THROW(idle_fidelity(-1e-9, 60e-6, 55e-6), ValidationError);
  EXPECT_THROW(idle_fidelity(1e-9, 0, 55e-6), ValidationError);
}

TEST(Idle, StrictlyDecreasingAndBounded) {
  double prev = idle_fidelity(0, 44e-6, 20e-6);
  for (int i = 1; i <= 200; ++i) {
    const double f = idle_fidelity(i * 0.5e-6, 44e-6, 20e-6);
    EXPECT_LT(f, prev);
    EXPECT_GT(f, 0.5);
    prev = f;
  }
}

// ---------------------------------------------------------------- clusters

TEST(Cluster, PerfectDeviceGivesOne) {
  EXPECT_DOUBLE_EQ(cluster_fidelity(3, 5, perfect(Flavor::FF)).total, 1.0);
  EXPECT_DOUBLE_EQ(cluster_fidelity(3, 5, perfect(Flavor::TF)).total, 1.0);
}

TEST(Cluster, TwoByEightSpotValues) {
  const double tf_ref = std::pow(0.9995, 48) * std::pow(0.995, 24) * std::pow(double(idle_ref(0.1e-6L, 44e-6L, 20e-6L)), 16);
  const double got_tf = cluster_fidelity(2, 8, tf(0.995, 0.1e-6)).total;
  EXPECT_NEAR(got_tf, tf_ref, 1e-12);
  EXPECT_NEAR(got_tf, 0.8378, 5e-5);

  const double ff_ref =
      std::pow(0.9995, 24) * std::pow(0.991, 8) * std::pow(0.995, 16) * std::pow(double(idle_ref(0.3e-6L, 60e-6L, 55e-6L)), 16);
  const double got_ff = cluster_fidelity(2, 8, ff(0.995, 0.991, 0.3e-6)).total;
  EXPECT_NEAR(got_ff, ff_ref, 1e-12);
  EXPECT_NEAR(got_ff, 0.8131, 5e-5);  // quoted elsewhere as 0.8132
}

TEST(Cluster, ColumnsCompound) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i)
    for (auto f : {Flavor::FF, Flavor::TF}) {
      const auto p = random_params(rng, f);
      for (std::size_t k = 1; k <= 4; ++k) {
        const double col = cluster_fidelity(k, 1, p).total;
        for (std::size_t n = 1; n <= 6; ++n)
          EXPECT_NEAR(cluster_fidelity(k, n, p).total, std::pow(col, double(n)), 1e-12);
      }
    }
}

TEST(Cluster, FlavorMismatchRejected) {
  DeviceParams p = DeviceParams::preset("tf-tableIII");
  p.flavor = Flavor::FF;
  EXPECT_THROW(cluster_fidelity(2, 2, p), ValidationError);
  DeviceParams q = DeviceParams::preset("ff-tableIII");
  q.flavor = Flavor::TF;
  EXPECT_THROW(cluster_fidelity(2, 2, q), ValidationError);
  EXPECT_THROW(cluster_fidelity(0, 2, DeviceParams::preset("ff-tableIII")), ValidationError);
}

TEST(Cluster, RatioValues) {
  auto p_ff = DeviceParams::preset("ff-tableIII");
  auto p_tf = DeviceParams::preset("tf-tableIII");
  p_tf.tau = 0.3e-6;
  EXPECT_NEAR(cluster_ratio(2, p_ff, p_tf), 1.0042, 5e-5);

  auto same_ff = p_ff, same_tf = p_tf;
  same_ff.f_sq = 1.0;
  same_tf.t1 = same_ff.t1;
  same_tf.t2 = same_ff.t2;
  same_tf.tau = same_ff.tau;
  EXPECT_DOUBLE_EQ(cluster_ratio(2, same_ff, same_tf), 1.0);

  double prev = cluster_ratio(2, p_ff, p_tf);
  for (int i = 1; i <= 20; ++i) {
    p_tf.tau = 0.3e-6 + i * 0.05e-6;
    const double r = cluster_ratio(2, p_ff, p_tf);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(Cluster, RatioPredictsTheWinner) {
  // Premise under which the ratio is exact: one shared two-qubit fidelity.
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto a = random_params(rng, Flavor::FF);
    auto b = random_params(rng, Flavor::TF);
    b.f_sq = a.f_sq;
    b.f_cz = a.f_cz;
    a.f_cr = a.f_cnot = a.f_cz;
    for (std::size_t k = 1; k <= 4; ++k) {
      const double r = cluster_ratio(k, a, b);
      const double ratio = cluster_fidelity(k, 3, a).total / cluster_fidelity(k, 3, b).total;
      EXPECT_NEAR(ratio, std::pow(r, 3.0 * double(k)), 1e-9);
      EXPECT_EQ(r > 1, ratio > 1);
    }
  }
}

TEST(Cluster, MaxSize) {
  EXPECT_EQ(max_cluster_size(2, tf(0.995, 0.1e-6), 0.8), 20u);
  EXPECT_EQ(max_cluster_size(2, ff(0.995, 0.991, 0.3e-6), 0.8), 16u);
  EXPECT_GE(cluster_fidelity(2, 8, tf(0.995, 0.1e-6)).total, 0.8);
  EXPECT_GE(cluster_fidelity(2, 8, ff(0.995, 0.991, 0.3e-6)).total, 0.8);
  // One column already below the bar.
  EXPECT_EQ(max_cluster_size(2, ff(0.9, 0.9, 0.3e-6), 0.8), 0u);
  EXPECT_THROW(max_cluster_size(2, tf(0.995, 0.1e-6), 1.0), ValidationError);
}

TEST(Cluster, MaxSizeAgreesWithScan) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng, i % 2 ? Flavor::FF : Flavor::TF);
    const std::size_t k = 1 + i % 3;
    std::size_t n = 0;
    while (cluster_fidelity(k, n + 1, p).total >= 0.8) ++n;
    EXPECT_EQ(max_cluster_size(k, p, 0.8), k * n);
  }
}

// ------------------------------------------------------------------- trees

TEST(Tree, TableIvBaselines) {
  EXPECT_NEAR(tree_fidelity(6, 1, DeviceParams::preset("ff-tableIV")).total, 0.823, 5e-4);
  EXPECT_NEAR(tree_fidelity(6, 1, DeviceParams::preset("tf-tableIV")).total, 0.827, 5e-4);
  EXPECT_NEAR(tree_fidelity(6, 1, tf(0.995, 0.9e-6, 0.99)).total, 0.68, 5e-3);
}

TEST(Tree, ArmFidelity) {
  EXPECT_DOUBLE_EQ(tree_arm_fidelity_ff(2, perfect(Flavor::FF)), 1.0);
  const auto p = DeviceParams::preset("ff-tableIV");
  EXPECT_NEAR(tree_arm_fidelity_ff(1, p), 0.9680, 5e-4);
  // b0 arms versus the tree: the tree carries one more SQG (the anchor's H).
  for (std::size_t b0 = 1; b0 <= 6; ++b0)
    for (std::size_t b1 = 0; b1 <= 3; ++b1)
      EXPECT_NEAR(tree_fidelity(b0, b1, p).total,
                  std::pow(tree_arm_fidelity_ff(b1, p), double(b0)) * p.f_sq, 1e-12);
}

TEST(Tree, RepeaterGraphState) {
  EXPECT_DOUBLE_EQ(rgs_fidelity(4, perfect(Flavor::TF)).total, 1.0);
  const auto p = DeviceParams::preset("ff-tableIV");
  EXPECT_NEAR(rgs_fidelity(6, p).total, 0.9995 * 0.99 * tree_fidelity(6, 1, p).total, 1e-12);
  EXPECT_NEAR(rgs_fidelity(6, p).total, 0.814, 5e-4);
  const auto improved = ff(0.998, 0.998, 0.3e-6, 0.99);
  EXPECT_NEAR(tree_fidelity(6, 1, improved).total, 0.87, 5e-3);
  EXPECT_NEAR(rgs_fidelity(6, improved).total, 0.861, 5e-3);
}

TEST(Tree, RatioValues) {
  auto p_ff = DeviceParams::preset("ff-tableIII");
  auto p_tf = DeviceParams::preset("tf-tableIII");
  p_tf.tau = 0.3e-6;
  EXPECT_NEAR(tree_ratio(1, p_ff, p_tf), 1.0037, 5e-5);
  const double idle_only = idle_fidelity(0.3e-6, 60e-6, 55e-6) / idle_fidelity(0.3e-6, 44e-6, 20e-6);
  double prev = tree_ratio(0, p_ff, p_tf);
  for (std::size_t b1 = 1; b1 < 50; ++b1) {
    const double r = tree_ratio(b1, p_ff, p_tf);
    EXPECT_LT(r, prev);
    EXPECT_GT(r, idle_only);
    prev = r;
  }
  auto eq_ff = p_ff, eq_tf = p_tf;
  eq_ff.f_sq = 1.0;
  eq_tf.t1 = eq_ff.t1;
  eq_tf.t2 = eq_ff.t2;
  EXPECT_DOUBLE_EQ(tree_ratio(1, eq_ff, eq_tf), 1.0);
}

// ------------------------------------------------------------------ budget

TEST(Budget, TableIvRows) {
  const double want_ff[] = {0.823, 0.833, 0.901, 0.874, 0.850};
  const double want_tf[] = {0.827, 0.839, 0.905, 0.878, 0.847};
  const auto ff_rows = error_budget(6, 1, DeviceParams::preset("ff-tableIV"));
  const auto tf_rows = error_budget(6, 1, DeviceParams::preset("tf-tableIV"));
  ASSERT_EQ(ff_rows.size(), 5u);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(ff_rows[i].report.total, want_ff[i], 5e-4) << ff_rows[i].removed;
    EXPECT_NEAR(tf_rows[i].report.total, want_tf[i], 5e-4) << tf_rows[i].removed;
  }
}

TEST(Budget, VariantsMultiplyBack) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(rng, i % 2 ? Flavor::FF : Flavor::TF);
    const auto rows = error_budget(1 + i % 6, i % 4, p);
    const double base = rows[0].report.total;
    for (std::size_t r = 1; r < rows.size(); ++r) {
      double removed = 1.0;
      for (const auto &f : rows[0].report.factors)
        if (f.source == rows[r].removed) removed *= std::pow(f.base, f.exponent);
      EXPECT_NEAR(rows[r].report.total * removed, base, 1e-12);
    }
  }
}

TEST(Budget, RemovingEverythingGivesOne) {
  auto rows = error_budget(6, 1, DeviceParams::preset("ff-tableIV"));
  auto fs = rows[0].report.factors;
  for (auto &f : fs) f.base = 1.0;
  EXPECT_DOUBLE_EQ(FidelityReport::from_factors(fs).total, 1.0);
}

// -------------------------------------------------------------- properties

TEST(Properties, MonotoneInSizeAndGateFidelity) {
  std::mt19937_64 rng(23);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i)
    for (auto f : {Flavor::FF, Flavor::TF}) {
      const auto p = random_params(rng, f);
      EXPECT_LT(cluster_fidelity(2, 4, p).total, cluster_fidelity(2, 3, p).total);
      EXPECT_LT(tree_fidelity(4, 2, p).total, tree_fidelity(3, 2, p).total);
      EXPECT_LT(tree_fidelity(3, 2, p).total, tree_fidelity(3, 1, p).total);
      EXPECT_LT(rgs_fidelity(4, p).total, rgs_fidelity(3, p).total);

      std::vector<double DeviceParams::*> plain{&DeviceParams::f_sq, &DeviceParams::f_m};
      for (auto field : plain) {
        auto q = p;
        q.*field += h;
        EXPECT_GT(tree_fidelity(3, 1, q).total, tree_fidelity(3, 1, p).total);
        if (field == &DeviceParams::f_sq) EXPECT_GT(cluster_fidelity(2, 3, q).total, cluster_fidelity(2, 3, p).total);
      }
      std::vector<std::optional<double> DeviceParams::*> two = {&DeviceParams::f_cz};
      if (f == Flavor::FF) two = {&DeviceParams::f_cr, &DeviceParams::f_cnot};
      for (auto field : two) {
        auto q = p;
        *(q.*field) += h;
        EXPECT_GT(cluster_fidelity(2, 3, q).total, cluster_fidelity(2, 3, p).total);
        EXPECT_GT(tree_fidelity(3, 1, q).total, tree_fidelity(3, 1, p).total);
      }
    }
}

TEST(Properties, ReportTotalIsProductOfFactors) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng, i % 2 ? Flavor::FF : Flavor::TF);
    for (const auto &r : {cluster_fidelity(3, 4, p), tree_fidelity(5, 2, p), rgs_fidelity(4, p)}) {
      double prod = 1.0;
      for (const auto &f : r.factors) prod *= std::pow(f.base, f.exponent);
      EXPECT_NEAR(r.total, prod, 1e-13);
    }
  }
}

TEST(Properties, EmissionFactorIsOptional) {
  auto p = DeviceParams::preset("tf-tableIV");
  const double without = tree_fidelity(6, 1, p).total;
  p.f_emit = 0.9999;
  EXPECT_NEAR(tree_fidelity(6, 1, p).total, without * std::pow(0.9999, 12), 1e-12);
}

// ---------------------------------------------------------- census bridge

TEST(CensusConsistency, MatchesClosedForms) {
  const auto tfp = DeviceParams::preset("tf-tableIII");
  const auto ffp = DeviceParams::preset("ff-tableIV");
  EXPECT_EQ(census_consistency(compile_cluster(2, 2, Flavor::TF), tfp).total, cluster_fidelity(2, 2, tfp).total);
  EXPECT_EQ(census_consistency(compile_tree(6, 1, Flavor::FF, Strategy::Parallel), ffp).total,
            tree_fidelity(6, 1, ffp).total);
  EXPECT_DOUBLE_EQ(census_consistency(CircuitIR{}, ffp).total, 1.0);
}

TEST(CensusConsistency, GridAgreement) {
  const auto tfp = DeviceParams::preset("tf-tableIV");
  const auto ffp = DeviceParams::preset("ff-tableIV");
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::size_t n = 1; n <= 4; ++n) {
      EXPECT_EQ(census_consistency(compile_cluster(k, n, Flavor::TF), tfp).total, cluster_fidelity(k, n, tfp).total);
      const double ff_census = census_consistency(compile_cluster(k, n, Flavor::FF), ffp).total;
      if (k > 1) EXPECT_EQ(ff_census, cluster_fidelity(k, n, ffp).total);
      else EXPECT_LT(ff_census, cluster_fidelity(k, n, ffp).total);  // the chain's extra H per cycle
    }
  for (std::size_t b0 = 1; b0 <= 4; ++b0)
    for (std::size_t b1 = 0; b1 <= 3; ++b1) {
      EXPECT_EQ(census_consistency(compile_tree(b0, b1, Flavor::FF, Strategy::Parallel), ffp).total,
                tree_fidelity(b0, b1, ffp).total);
      EXPECT_EQ(census_consistency(compile_tree(b0, b1, Flavor::TF, Strategy::Parallel), tfp).total,
                tree_fidelity(b0, b1, tfp).total);
    }
  for (std::size_t b0 = 2; b0 <= 4; ++b0) {
    EXPECT_EQ(census_consistency(compile_rgs(b0, Flavor::FF, Strategy::Parallel), ffp).total, rgs_fidelity(b0, ffp).total);
    EXPECT_EQ(census_consistency(compile_rgs(b0, Flavor::TF, Strategy::Parallel), tfp).total, rgs_fidelity(b0, tfp).total);
  }
}

// ------------------------------------------------------------------ sweeps

TEST(Sweep, TwoPointGridEqualsDirectCall) {
  SweepSpec s;
  s.protocol = "tree";
  s.b0 = 6;
  s.b1 = 1;
  s.params = DeviceParams::preset("ff-tableIV");
  s.axes = {{"tau", 0.3e-6, 0.3e-6, 2, false}};
  const auto t = sweep(s);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], tree_fidelity(6, 1, s.params).total);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"tau", "fidelity"}));
}

TEST(Sweep, FigureSixSpotValues) {
  const auto a = sweep(figure_sweep("6a"));
  auto at = [](const SweepTable &t, double f2q, double tau) {
    for (const auto &r : t.rows)
      if (std::abs(r[0] - f2q) < 1e-12 && std::abs(r[1] - tau) < 1e-15) return r[2];
    ADD_FAILURE() << "grid point missing " << f2q << " " << tau;
    return 0.0;
  };
  EXPECT_NEAR(at(a, 0.99, 0.9e-6), 0.706, 5e-3);
  EXPECT_NEAR(at(a, 0.995, 0.9e-6), 0.77, 1e-2);
  EXPECT_NEAR(at(a, 0.99, 0.3e-6), 0.76, 1e-2);
  EXPECT_NEAR(at(a, 0.995, 0.3e-6), 0.823, 5e-4);
  const auto b = sweep(figure_sweep("6b"));
  EXPECT_NEAR(at(b, 0.995, 0.9e-6), 0.68, 1e-2);
  EXPECT_NEAR(at(b, 0.995, 0.1e-6), 0.827, 5e-4);
}

TEST(Sweep, RowMajorCsv) {
  SweepSpec s;
  s.protocol = "cluster";
  s.params = DeviceParams::preset("tf-tableIII");
  s.axes = {{"fcz", 0.99, 0.999, 3, false}, {"tau", 0.1e-6, 0.2e-6, 2, false}};
  const auto t = sweep(s);
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(t.rows[1][0], 0.99);
  EXPECT_EQ(t.rows[1][1], 0.2e-6);
  EXPECT_EQ(t.rows[2][0], 0.9945);
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "fcz,tau,fidelity");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(sweep(s).to_csv(), csv);
}

TEST(Sweep, MaxSizeFigureAndErrors) {
  const auto t = sweep(figure_sweep("3d"));
  EXPECT_EQ(t.columns.back(), "max_size");
  for (const auto &r : t.rows)
    if (std::abs(r[0] - 0.995) < 1e-12 && std::abs(r[1] - 0.1e-6) < 1e-15) EXPECT_EQ(r[2], 20.0);
  SweepSpec bad;
  bad.params = DeviceParams::preset("tf-tableIII");
  bad.axes = {{"voltage", 0, 1, 3, false}};
  EXPECT_THROW(sweep(bad), ValidationError);
  bad.axes = {{"tau", 0, 1e-6, 1, false}};
  EXPECT_THROW(sweep(bad), ValidationError);
  EXPECT_THROW(figure_sweep("9z"), ValidationError);
}

// -------------------------------------------------------------------- json

TEST(Json, ReportAndParams) {
  const auto r = tree_fidelity(6, 1, DeviceParams::preset("ff-tableIV"));
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_DOUBLE_EQ(j["total"].get<double>(), r.total);
  ASSERT_EQ(j["factors"].size(), r.factors.size());
  for (const auto &f : j["factors"]) {
    EXPECT_TRUE(f.contains("source"));
    EXPECT_TRUE(f.contains("base"));
    EXPECT_TRUE(f.contains("exponent"));
  }
  const auto pj = nlohmann::json::parse(DeviceParams::preset("tf-tableIV").to_json());
  EXPECT_EQ(pj["flavor"], "tf");
  EXPECT_DOUBLE_EQ(pj["fcz"].get<double>(), 0.995);
  EXPECT_THROW(DeviceParams::preset("ff-tableV"), ValidationError);
}
