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
#include "gbsclust/baselines.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "gbsclust/error.h"
#include "gbsclust/qclust.h"
#include "gbsclust/rng.h"

namespace gbsclust {
namespace {

using Vec2 = std::array<double, 2>;

double sq_dist(const Vec2& a, const Vec2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

std::vector<Vec2> coordinates(const PointSet& points) {
  std::vector<Vec2> xs;
  xs.reserve(points.size());
  for (const Point& p : points.points()) xs.push_back({p.lat, p.lon});
  return xs;
}

int nearest(const Vec2& x, const std::vector<Vec2>& centroids) {
  int best = 0;
  double best_d = sq_dist(x, centroids[0]);
  for (std::size_t c = 1; c < centroids.size(); ++c) {
    const double d = sq_dist(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

double inertia_of(const std::vector<Vec2>& xs, const std::vector<Vec2>& cs,
                  const std::vector<int>& assign) {
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    total += sq_dist(xs[i], cs[static_cast<std::size_t>(assign[i])]);
  }
  return total;
}

std::vector<Vec2> kmeans_plus_plus(const std::vector<Vec2>& xs, std::size_t k,
                                   Rng& rng) {
  const std::size_t n = xs.size();
  std::vector<Vec2> cs;
  cs.reserve(k);
  auto pick_uniform = [&]() {
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) *
                                                    static_cast<double>(n)));
  };
  cs.push_back(xs[pick_uniform()]);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(xs[i], cs[0]);
  while (cs.size() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    std::size_t chosen = 0;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      chosen = n - 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        if (r < d2[i]) {
          chosen = i;
          break;
        }
        r -= d2[i];
      }
      while (d2[chosen] <= 0.0) --chosen;
    } else {
      chosen = pick_uniform();
    }
    cs.push_back(xs[chosen]);
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(xs[i], cs.back()));
    }
  }
  return cs;
}

KMeansResult lloyd(const std::vector<Vec2>& xs, std::vector<Vec2> cs,
                   int max_iterations) {
  const std::size_t n = xs.size();
  const std::size_t k = cs.size();
  std::vector<int> assign(n, -1);
  std::vector<double> history;
  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<int> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = nearest(xs[i], cs);

    // Repair empty clusters.
    std::vector<std::size_t> sizes(k, 0);
    for (int c : next) ++sizes[static_cast<std::size_t>(c)];
    for (std::size_t empty = 0; empty < k; ++empty) {
      if (sizes[empty] != 0) continue;
      const auto largest = static_cast<std::size_t>(
          std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<std::size_t>(next[i]) != largest) continue;
        const double d = sq_dist(xs[i], cs[largest]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      next[far] = static_cast<int>(empty);
      cs[empty] = xs[far];
      --sizes[largest];
      ++sizes[empty];
    }

    std::vector<Vec2> sums(k, Vec2{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[static_cast<std::size_t>(next[i])];
      s[0] += xs[i][0];
      s[1] += xs[i][1];
    }
    for (std::size_t c = 0; c < k; ++c) {
      const auto cnt = static_cast<double>(sizes[c]);
      cs[c] = {sums[c][0] / cnt, sums[c][1] / cnt};
    }
    const double inertia = inertia_of(xs, cs, next);
    if (!history.empty() &&
        inertia > history.back() * (1.0 + 1e-12) + 1e-300) {
      throw NumericError("k-means inertia increased during a Lloyd iteration");
    }
    history.push_back(inertia);
    const bool converged = next == assign;
    assign = std::move(next);
    if (converged) break;
  }
  // Final assignment against the final centroids.
  for (std::size_t i = 0; i < n; ++i) assign[i] = nearest(xs[i], cs);
  KMeansResult out;
  out.centroids = std::move(cs);
  out.assignment = std::move(assign);
  out.inertia = inertia_of(xs, out.centroids, out.assignment);
  out.inertia_history = std::move(history);
  return out;
}

}  // namespace

Clustering KMeansResult::to_clustering(std::uint64_t seed) const {
  std::vector<NodeSet> clusters(centroids.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    clusters[static_cast<std::size_t>(assignment[i])].push_back(
        static_cast<int>(i));
  }
  std::erase_if(clusters, [](const NodeSet& c) { return c.empty(); });
  nlohmann::json params;
  params["k"] = centroids.size();
  params["seed"] = seed;
  params["inertia"] = inertia;
  return Clustering(std::move(clusters), assignment.size(), "kmeans", params);
}

KMeansResult kmeans(const PointSet& points, std::size_t k, std::uint64_t seed,
                    const KMeansOptions& options) {
  if (k < 1 || k > points.size()) {
    throw InvalidInputError("k must satisfy 1 <= k <= M");
  }
  if (options.restarts < 1 || options.max_iterations < 1) {
    throw InvalidInputError("k-means needs at least one restart and iteration");
  }
  const std::vector<Vec2> xs = coordinates(points);
  KMeansResult best;
  bool have = false;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    KMeansResult run =
        lloyd(xs, kmeans_plus_plus(xs, k, rng), options.max_iterations);
    run.restart = r;
    if (!have || run.inertia < best.inertia) {
      best = std::move(run);
      have = true;
    }
  }
  return best;
}

ElbowAnalysis elbow_analysis(const PointSet& points, std::size_t k_max,
                             std::uint64_t seed, const KMeansOptions& options) {
  if (k_max < 3) throw InvalidInputError("elbow analysis needs k_max >= 3");
  if (k_max > points.size()) throw InvalidInputError("k_max must not exceed M");
  ElbowAnalysis out;
  for (std::size_t k = 1; k <= k_max; ++k) {
    out.inertia.push_back(kmeans(points, k, seed, options).inertia);
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k < k_max; ++k) {
    const double second = out.inertia[k - 2] - 2.0 * out.inertia[k - 1] +
                          out.inertia[k];
    if (second > best) {
      best = second;
      out.k = k;
    }
  }
  return out;
}

std::size_t elbow_select_k(const PointSet& points, std::size_t k_max,
                           std::uint64_t seed) {
  return elbow_analysis(points, k_max, seed).k;
}

DbscanResult dbscan(const PointSet& points, double eps, std::size_t min_pts) {
  if (!(eps > 0.0)) throw InvalidInputError("eps must be positive");
  if (min_pts < 1) throw InvalidInputError("min_pts must be at least 1");
  const DistanceMatrix d = compute_distance_matrix(points);
  const std::size_t n = points.size();
  std::vector<std::vector<int>> neighbours(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d(i, j) <= eps) neighbours[i].push_back(static_cast<int>(j));
    }
  }
  auto is_core = [&](std::size_t i) { return neighbours[i].size() >= min_pts; };

  std::vector<int> label(n, -1);
  DbscanResult out;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] != -1 || !is_core(seed)) continue;
    const int id = static_cast<int>(out.clusters.size());
    out.clusters.emplace_back();
    std::deque<int> queue{static_cast<int>(seed)};
    label[seed] = id;
    while (!queue.empty()) {
      const auto u = static_cast<std::size_t>(queue.front());
      queue.pop_front();
      out.clusters.back().push_back(static_cast<int>(u));
      if (!is_core(u)) continue;
      for (int v : neighbours[u]) {
        if (label[static_cast<std::size_t>(v)] != -1) continue;
        label[static_cast<std::size_t>(v)] = id;
        queue.push_back(v);
      }
    }
    std::sort(out.clusters.back().begin(), out.clusters.back().end());
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == -1) out.noise.push_back(static_cast<int>(i));
  }
  return out;
}

Clustering dbscan_with_postprocess(const PointSet& points, double eps,
                                   std::size_t min_pts, const Graph& g) {
  if (g.size() != points.size()) {
    throw InvalidInputError("graph and point set sizes differ");
  }
  const DbscanResult raw = dbscan(points, eps, min_pts);
  nlohmann::json params;
  params["eps"] = eps;
  params["min_pts"] = min_pts;
  params["noise_points"] = raw.noise.size();
  return post_process(raw.noise, raw.clusters, g, "dbscan", params);
}

}  // namespace gbsclust
