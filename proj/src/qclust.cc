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
#include "gbsclust/qclust.h"

#include <algorithm>
#include <cmath>

#include "gbsclust/error.h"
#include "gbsclust/rng.h"

namespace gbsclust {
namespace {

std::size_t ceil_fraction(double fraction, std::size_t size) {
  // Guard against 1/3 * 15 landing a hair above 5.
  const double raw = fraction * static_cast<double>(size);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

NodeSet to_labels(const Graph& sub, const NodeSet& local) {
  NodeSet out;
  out.reserve(local.size());
  for (int u : local) out.push_back(sub.label(u));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

void ClusterParams::validate() const {
  if (!(d_percentile > 0.0 && d_percentile < 1.0)) {
    throw InvalidInputError("d_percentile must lie in (0, 1)");
  }
  if (d_tilde && !(*d_tilde > 0.0)) {
    throw InvalidInputError("d_tilde must be positive");
  }
  if (!(n_mean_factor > 0.0)) {
    throw InvalidInputError("n_mean_factor must be positive");
  }
  if (samples < 1) throw InvalidInputError("samples must be at least 1");
  if (!(l_factor >= 0.0 && l_factor <= 1.0)) {
    throw InvalidInputError("l_factor must lie in [0, 1]");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw InvalidInputError("gamma must lie in (0, 1)");
  }
  if (!(t_min <= t0 && t0 <= 1.0 && t_min >= 0.0)) {
    throw InvalidInputError("thresholds must satisfy 0 <= t_min <= t0 <= 1");
  }
  if (max_rounds_per_cluster < 1) {
    throw InvalidInputError("max_rounds_per_cluster must be at least 1");
  }
}

nlohmann::json ClusterParams::to_json() const {
  nlohmann::json j;
  j["d_percentile"] = d_percentile;
  j["d_tilde"] = d_tilde ? nlohmann::json(*d_tilde) : nlohmann::json(nullptr);
  j["n_mean_factor"] = n_mean_factor;
  j["samples"] = samples;
  j["L_factor"] = l_factor;
  j["t0"] = t0;
  j["gamma"] = gamma;
  j["t_min"] = t_min;
  j["min_remaining"] = min_remaining;
  j["max_rounds_per_cluster"] = max_rounds_per_cluster;
  j["recompute_per_iteration"] = recompute_per_iteration;
  j["mode"] = std::string(to_string(mode));
  j["seed"] = seed;
  return j;
}

ClusterParams ClusterParams::from_json(const nlohmann::json& j) {
  return from_json(j, ClusterParams{});
}

ClusterParams ClusterParams::from_json(const nlohmann::json& j,
                                       ClusterParams base) {
  ClusterParams p = std::move(base);
  if (!j.is_object()) throw InvalidInputError("cluster params must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "d_percentile") {
      p.d_percentile = value.get<double>();
    } else if (key == "d_tilde") {
      if (!value.is_null()) p.d_tilde = value.get<double>();
    } else if (key == "n_mean_factor") {
      p.n_mean_factor = value.get<double>();
    } else if (key == "samples" || key == "N") {
      p.samples = value.get<std::size_t>();
    } else if (key == "L_factor") {
      p.l_factor = value.get<double>();
    } else if (key == "t0") {
      p.t0 = value.get<double>();
    } else if (key == "gamma") {
      p.gamma = value.get<double>();
    } else if (key == "t_min") {
      p.t_min = value.get<double>();
    } else if (key == "min_remaining") {
      p.min_remaining = value.get<std::size_t>();
    } else if (key == "max_rounds_per_cluster") {
      p.max_rounds_per_cluster = value.get<std::size_t>();
    } else if (key == "recompute_per_iteration") {
      p.recompute_per_iteration = value.get<bool>();
    } else if (key == "mode") {
      p.mode = parse_detection_mode(value.get<std::string>());
    } else if (key == "seed") {
      p.seed = value.get<std::uint64_t>();
    } else {
      throw InvalidInputError("unknown cluster parameter '" + key + "'");
    }
  }
  p.validate();
  return p;
}

double compute_threshold(std::size_t failed_rounds,
                         const ClusterParams& params) {
  const double t =
      params.t0 * std::pow(params.gamma, static_cast<double>(failed_rounds));
  return std::max(params.t_min, t);
}

std::optional<NodeSet> find_densest_candidate(const SampleBatch& batch,
                                              const Graph& g,
                                              std::size_t min_size) {
  std::optional<NodeSet> best;
  double best_density = -1.0;
  for (const NodeSet& s : batch.samples) {
    if (s.size() < min_size) continue;
    const double d = graph_density(g, s);
    bool better = false;
    if (!best || d > best_density) {
      better = true;
    } else if (d == best_density) {
      better = s.size() > best->size() ||
               (s.size() == best->size() && s < *best);
    }
    if (better) {
      best = normalize_node_set(s, g.size());
      best_density = d;
    }
  }
  return best;
}

Clustering post_process(std::span<const int> unclustered,
                        const std::vector<NodeSet>& clusters, const Graph& g,
                        std::string method, nlohmann::json params) {
  const NodeSet pending = normalize_node_set(unclustered, g.size());
  std::vector<NodeSet> grown = clusters;
  NodeSet singletons;
  for (int u : pending) {
    int best = -1;
    double best_ratio = 0.0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const NodeSet& members = clusters[c];
      if (members.empty()) continue;
      std::size_t links = 0;
      for (int v : members) links += g.has_edge(u, v) ? 1 : 0;
      if (links == 0) continue;
      const double ratio =
          static_cast<double>(links) / static_cast<double>(members.size());
      if (best < 0 || ratio > best_ratio) {
        best = static_cast<int>(c);
        best_ratio = ratio;
      }
    }
    if (best < 0) {
      singletons.push_back(u);
    } else {
      grown[static_cast<std::size_t>(best)].push_back(u);
    }
  }
  for (int u : singletons) grown.push_back(NodeSet{u});
  return Clustering(std::move(grown), g.size(), std::move(method),
                    std::move(params));
}

GbsClusterRun gbs_cluster_graph(const Graph& g, const ClusterParams& params) {
  params.validate();
  const std::size_t m = g.size();
  if (m < 2) throw InvalidInputError("clustering needs at least 2 points");

  NodeSet remaining(m);
  for (std::size_t u = 0; u < m; ++u) remaining[u] = static_cast<int>(u);
  std::vector<AcceptedCluster> accepted;
  // Inputs smaller than min_remaining still get one extraction attempt.
  const std::size_t stop_size = std::min(params.min_remaining, m);
  const std::size_t initial_l = ceil_fraction(params.l_factor, m);
  const double initial_n_mean = params.n_mean_factor * static_cast<double>(m);
  WeightCache cache(1);
  std::size_t round = 0;

  while (remaining.size() >= std::max<std::size_t>(stop_size, 1)) {
    const Graph sub = induced_subgraph(g, remaining);
    if (sub.edge_count() == 0) break;
    const SymMatrix a = SymMatrix::from_graph(sub);
    const std::size_t size = remaining.size();
    std::size_t min_size = params.recompute_per_iteration
                               ? ceil_fraction(params.l_factor, size)
                               : initial_l;
    const double n_mean = params.recompute_per_iteration
                              ? params.n_mean_factor * static_cast<double>(size)
                              : initial_n_mean;

    std::optional<AcceptedCluster> found;
    std::size_t failed = 0;
    std::size_t stall = 0;
    std::size_t rounds_here = 0;
    while (true) {
      const SampleBatch batch = sample(a, n_mean, params.samples, params.mode,
                                       derive_seed(params.seed, round), &cache);
      ++round;
      ++rounds_here;
      const std::optional<NodeSet> best =
          find_densest_candidate(batch, sub, min_size);
      const double t = compute_threshold(failed, params);
      if (best) {
        const double density = graph_density(sub, *best);
        if (density > t) {
          found = AcceptedCluster{to_labels(sub, *best), density, t,
                                  rounds_here, min_size};
          break;
        }
      }
      ++failed;
      if (++stall >= params.max_rounds_per_cluster) {
        if (min_size <= 2) break;
        min_size = std::max<std::size_t>(2, min_size / 2);
        stall = 0;
      }
    }
    if (!found) break;
    NodeSet next;
    std::set_difference(remaining.begin(), remaining.end(),
                        found->nodes.begin(), found->nodes.end(),
                        std::back_inserter(next));
    remaining = std::move(next);
    accepted.push_back(std::move(*found));
  }

  std::vector<NodeSet> clusters;
  clusters.reserve(accepted.size());
  for (const AcceptedCluster& c : accepted) clusters.push_back(c.nodes);
  Clustering clustering =
      post_process(remaining, clusters, g, "gbs", params.to_json());
  return GbsClusterRun{std::move(clustering), std::move(accepted),
                       std::move(remaining), round};
}

double edge_threshold(const DistanceMatrix& distances,
                      const ClusterParams& params) {
  if (params.d_tilde) return *params.d_tilde;
  const std::vector<double> pairs = distances.pair_distances();
  return percentile(pairs, params.d_percentile);
}

GbsClusterRun gbs_cluster_run(const PointSet& points,
                              const ClusterParams& params) {
  params.validate();
  const DistanceMatrix d = compute_distance_matrix(points);
  const Graph g = build_adjacency(d, edge_threshold(d, params));
  return gbs_cluster_graph(g, params);
}

Clustering gbs_cluster(const PointSet& points, const ClusterParams& params) {
  return gbs_cluster_run(points, params).clustering;
}

}  // namespace gbsclust
