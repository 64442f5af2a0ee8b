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
#include "gbsclust/metrics.h"

#include <algorithm>
#include <limits>

#include "gbsclust/error.h"

namespace gbsclust {
namespace {

void check_sizes(const Clustering& clustering, std::size_t n) {
  if (clustering.point_count() != n) {
    throw InvalidInputError("clustering covers " +
                            std::to_string(clustering.point_count()) +
                            " points but the input has " + std::to_string(n));
  }
}

void check_range(const char* name, double value, double lo, double hi) {
  constexpr double kSlack = 1e-12;
  if (!(value >= lo - kSlack && value <= hi + kSlack)) {
    throw NumericError(std::string(name) + " out of its declared range");
  }
}

}  // namespace

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const ClusterBreakdown& c : per_cluster) {
    rows.push_back({{"n", c.size},
                    {"density", c.density},
                    {"delta_int", c.delta_int},
                    {"delta_ext", c.delta_ext}});
  }
  return {{"silhouette", silhouette},
          {"weighted_density", weighted_density},
          {"cohesion", cohesion},
          {"per_cluster", std::move(rows)}};
}

std::vector<ClusterBreakdown> cluster_breakdown(const Clustering& clustering,
                                                const Graph& g) {
  check_sizes(clustering, g.size());
  const auto m = static_cast<double>(g.size());
  std::vector<ClusterBreakdown> out;
  out.reserve(clustering.cluster_count());
  for (const NodeSet& c : clustering.clusters()) {
    const EdgeCounts counts = edge_counts(g, c);
    const auto n = static_cast<double>(c.size());
    ClusterBreakdown row;
    row.size = c.size();
    if (c.size() == 1) {
      row.density = 1.0;
      row.delta_int = 1.0;
    } else {
      row.density = graph_density(g, c);
      row.delta_int =
          static_cast<double>(counts.internal) / (n * (n - 1.0) / 2.0);
    }
    row.delta_ext = c.size() == g.size()
                        ? 0.0
                        : static_cast<double>(counts.external) / (n * (m - n));
    out.push_back(row);
  }
  return out;
}

double silhouette(const DistanceMatrix& distances,
                  const Clustering& clustering) {
  check_sizes(clustering, distances.size());
  if (clustering.cluster_count() < 2) {
    throw UndefinedMetricError("silhouette needs at least two clusters");
  }
  const std::vector<int>& assign = clustering.assignment();
  const auto& clusters = clustering.clusters();
  const std::size_t n = distances.size();
  double total = 0.0;
  std::vector<double> sums(clusters.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = static_cast<std::size_t>(assign[i]);
    if (clusters[own].size() == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      sums[static_cast<std::size_t>(assign[j])] += distances(i, j);
    }
    const double a =
        sums[own] / static_cast<double>(clusters[own].size() - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (c == own) continue;
      b = std::min(b, sums[c] / static_cast<double>(clusters[c].size()));
    }
    const double denom = std::max(a, b);
    total += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return total / static_cast<double>(n);
}

double silhouette(const PointSet& points, const Clustering& clustering) {
  return silhouette(compute_distance_matrix(points), clustering);
}

double weighted_density(const Clustering& clustering, const Graph& g) {
  double total = 0.0;
  for (const ClusterBreakdown& c : cluster_breakdown(clustering, g)) {
    total += static_cast<double>(c.size) * c.density;
  }
  return total / static_cast<double>(g.size());
}

double cohesion(const Clustering& clustering, const Graph& g) {
  const std::vector<ClusterBreakdown> rows = cluster_breakdown(clustering, g);
  if (rows.empty()) throw UndefinedMetricError("cohesion of an empty clustering");
  double total = 0.0;
  for (const ClusterBreakdown& c : rows) total += c.delta_int - c.delta_ext;
  return total / static_cast<double>(rows.size());
}

MetricsReport evaluate(const DistanceMatrix& distances, const Graph& g,
                       const Clustering& clustering) {
  if (distances.size() != g.size()) {
    throw InvalidInputError("distance matrix and graph sizes differ");
  }
  MetricsReport report;
  report.silhouette = silhouette(distances, clustering);
  report.per_cluster = cluster_breakdown(clustering, g);
  double w = 0.0;
  double coh = 0.0;
  for (const ClusterBreakdown& c : report.per_cluster) {
    w += static_cast<double>(c.size) * c.density;
    coh += c.delta_int - c.delta_ext;
  }
  report.weighted_density = w / static_cast<double>(g.size());
  report.cohesion = coh / static_cast<double>(report.per_cluster.size());
  check_range("silhouette", report.silhouette, -1.0, 1.0);
  check_range("weighted density", report.weighted_density, 0.0, 1.0);
  check_range("cohesion", report.cohesion, -1.0, 1.0);
  return report;
}

}  // namespace gbsclust
