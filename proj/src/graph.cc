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
#include "gbsclust/graph.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gbsclust/error.h"

namespace gbsclust {

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw InvalidInputError("point set needs at least 2 points, got " +
                            std::to_string(points_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const Point& p : points_) {
    if (!seen.insert(p.id).second) {
      throw InvalidInputError("duplicate point id '" + p.id + "'");
    }
    if (!std::isfinite(p.lat) || !std::isfinite(p.lon)) {
      throw InvalidInputError("non-finite coordinate for point '" + p.id + "'");
    }
  }
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd values)
    : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw InvalidInputError("distance matrix must be square");
  }
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) {
      throw InvalidInputError("distance matrix must have a zero diagonal");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (values_(i, j) != values_(j, i) || !(values_(i, j) >= 0.0)) {
        throw InvalidInputError(
            "distance matrix must be symmetric and nonnegative");
      }
    }
  }
}

std::vector<double> DistanceMatrix::pair_distances() const {
  const Eigen::Index n = values_.rows();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(values_(i, j));
  }
  return out;
}

Graph::Graph(std::size_t n) : n_(n), adj_(n * n, 0), labels_(n) {
  for (std::size_t i = 0; i < n; ++i) labels_[i] = static_cast<int>(i);
}

Graph::Graph(std::size_t n, std::span<const std::pair<int, int>> edges)
    : Graph(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

Graph Graph::from_adjacency(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw InvalidInputError("adjacency matrix must be square");
  }
  const auto n = static_cast<std::size_t>(adjacency.rows());
  Graph g(n);
  for (Eigen::Index i = 0; i < adjacency.rows(); ++i) {
    if (adjacency(i, i) != 0.0) {
      throw InvalidInputError("adjacency matrix must have a zero diagonal");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = adjacency(i, j);
      if (a != adjacency(j, i)) {
        throw InvalidInputError("adjacency matrix must be symmetric");
      }
      if (a != 0.0 && a != 1.0) {
        throw InvalidInputError("adjacency matrix entries must be 0 or 1");
      }
      if (a == 1.0) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return g;
}

void Graph::check_node(int u) const {
  if (u < 0 || static_cast<std::size_t>(u) >= n_) {
    throw InvalidInputError("node " + std::to_string(u) +
                            " out of range for graph of size " +
                            std::to_string(n_));
  }
}

void Graph::add_edge(int u, int v) {
  check_node(u);
  check_node(v);
  if (u == v) throw InvalidInputError("self-loops are not allowed");
  adj_[index(u, v)] = 1;
  adj_[index(v, u)] = 1;
}

int Graph::degree(int u) const {
  check_node(u);
  int d = 0;
  for (std::size_t v = 0; v < n_; ++v) d += adj_[index(u, static_cast<int>(v))];
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (std::uint8_t a : adj_) total += a;
  return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (adj_[u * n_ + v]) {
        out.emplace_back(static_cast<int>(u), static_cast<int>(v));
      }
    }
  }
  return out;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = adj_[static_cast<std::size_t>(i) * n_ +
                     static_cast<std::size_t>(j)];
    }
  }
  return a;
}

std::vector<std::uint64_t> Graph::row_masks() const {
  if (n_ > 64) throw CapacityError("row masks need at most 64 nodes");
  std::vector<std::uint64_t> rows(n_, 0);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = 0; v < n_; ++v) {
      if (adj_[u * n_ + v]) rows[u] |= std::uint64_t{1} << v;
    }
  }
  return rows;
}

NodeSet normalize_node_set(std::span<const int> nodes, std::size_t n) {
  NodeSet out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int u : out) {
    if (u < 0 || static_cast<std::size_t>(u) >= n) {
      throw InvalidInputError("node " + std::to_string(u) +
                              " out of range for graph of size " +
                              std::to_string(n));
    }
  }
  return out;
}

DistanceMatrix compute_distance_matrix(const PointSet& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point& a = points[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Point& b = points[static_cast<std::size_t>(j)];
      d(i, j) = d(j, i) = std::hypot(a.lat - b.lat, a.lon - b.lon);
    }
  }
  return DistanceMatrix(std::move(d));
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidInputError("percentile of an empty list");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidInputError("percentile fraction must lie in [0, 1]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Graph build_adjacency(const DistanceMatrix& distances, double d_tilde) {
  if (!(d_tilde > 0.0)) {
    throw InvalidInputError("distance threshold must be positive");
  }
  const std::size_t n = distances.size();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distances(i, j) < d_tilde) {
        g.add_edge(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  return g;
}

double graph_density(const Graph& g, std::span<const int> subset) {
  const NodeSet s = normalize_node_set(subset, g.size());
  if (s.size() <= 1) return 0.0;
  const EdgeCounts counts = edge_counts(g, s);
  const auto n = static_cast<double>(s.size());
  return 2.0 * static_cast<double>(counts.internal) / (n * (n - 1.0));
}

Graph induced_subgraph(const Graph& g, std::span<const int> subset) {
  const NodeSet s = normalize_node_set(subset, g.size());
  if (s.empty()) throw InvalidInputError("induced subgraph of an empty subset");
  Graph sub(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) {
    sub.labels_[a] = g.label(s[a]);
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (g.has_edge(s[a], s[b])) {
        sub.add_edge(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return sub;
}

EdgeCounts edge_counts(const Graph& g, std::span<const int> subset) {
  const NodeSet s = normalize_node_set(subset, g.size());
  std::vector<char> inside(g.size(), 0);
  for (int u : s) inside[static_cast<std::size_t>(u)] = 1;
  EdgeCounts counts;
  for (const auto& [u, v] : g.edges()) {
    const int k = inside[static_cast<std::size_t>(u)] +
                  inside[static_cast<std::size_t>(v)];
    if (k == 2) {
      ++counts.internal;
    } else if (k == 1) {
      ++counts.external;
    }
  }
  return counts;
}

}  // namespace gbsclust
