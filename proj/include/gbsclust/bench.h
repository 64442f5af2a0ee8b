// Copyright 2026 The gbsclust Authors.
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
#ifndef GBSCLUST_BENCH_H_
#define GBSCLUST_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gbsclust/graph.h"
#include "gbsclust/metrics.h"
#include "gbsclust/qclust.h"

namespace gbsclust {

// Seeded blob generator standing in for real location datasets.
struct GeneratorParams {
  std::size_t blobs_min = 2;
  std::size_t blobs_max = 4;
  // Isotropic Gaussian jitter around each blob centre, degrees.
  double spread = 0.004;
  double lat_min = 45.00;
  double lat_max = 45.10;
  double lon_min = 7.60;
  double lon_max = 7.70;
};

struct KMeansBenchParams {
  // Fixed k, or elbow analysis over 1..min(k_max, M) when empty.
  std::optional<std::size_t> k;
  std::size_t k_max = 10;
  int restarts = 10;
  int max_iterations = 300;
};

struct DbscanParams {
  double eps = 0.005;
  std::size_t min_pts = 2;
};

// GBS settings of the benchmark preset: threshold detection, everything else
// at the ClusterParams defaults.
ClusterParams bench_gbs_defaults();

struct BenchConfig {
  std::size_t dataset_count = 30;
  std::size_t m_min = 15;
  std::size_t m_max = 25;
  GeneratorParams generator;
  ClusterParams gbs = bench_gbs_defaults();
  KMeansBenchParams kmeans;
  DbscanParams dbscan;
  std::uint64_t master_seed = 0;
  std::string output_dir = "bench_out";

  void validate() const;
  nlohmann::json to_json() const;
  // Missing keys keep their defaults; unknown keys are rejected.
  static BenchConfig from_json(const nlohmann::json& j);
};

// M points assigned round-robin to B blobs (B drawn from the configured range
// unless given) with centres uniform in the bounding box.
PointSet generate_dataset(std::uint64_t seed, std::size_t m,
                          const GeneratorParams& params,
                          std::optional<std::size_t> blobs = std::nullopt);

struct BenchRow {
  std::size_t dataset_id = 0;
  std::string method;
  std::size_t points = 0;
  std::size_t clusters = 0;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
};

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;
};

struct MethodSummary {
  std::string method;
  std::size_t count = 0;
  MetricSummary silhouette;
  MetricSummary weighted_density;
  MetricSummary cohesion;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<MethodSummary> summary;

  bool all_ok() const;
  const MethodSummary& method(const std::string& name) const;
};

// Method names in report order.
const std::vector<std::string>& bench_methods();

BenchReport run_benchmark(const BenchConfig& config);
// Same protocol on caller-supplied datasets (dataset_count is ignored).
BenchReport run_benchmark_on(const std::vector<PointSet>& datasets,
                             const BenchConfig& config);

// Means and sample standard deviations over successful rows.
std::vector<MethodSummary> summarize(const std::vector<BenchRow>& rows);

std::string report_csv(const BenchReport& report);
std::string summary_json(const BenchReport& report);
// Writes report.csv and summary.json into `dir`, creating it if needed.
void emit_report(const BenchReport& report, const std::string& dir);

}  // namespace gbsclust

#endif  // GBSCLUST_BENCH_H_
