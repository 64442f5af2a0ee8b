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
#ifndef GBSCLUST_GRAPH_H_
#define GBSCLUST_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace gbsclust {

// Sorted list of distinct node indices.
using NodeSet = std::vector<int>;

struct Point {
  std::string id;
  double lat = 0.0;
  double lon = 0.0;
};

// Labelled 2-D locations. Ids are unique and there are at least two points.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }

 private:
  std::vector<Point> points_;
};

// Symmetric matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Eigen::MatrixXd values);

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& values() const { return values_; }

  // Each unordered pair (i < j) once, row-major.
  std::vector<double> pair_distances() const;

 private:
  Eigen::MatrixXd values_;
};

// Undirected simple graph over nodes 0..n-1. Each node carries a label, the
// index it had in the graph (or point set) it was derived from.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const std::pair<int, int>> edges);

  // Throws InvalidInputError unless `adjacency` is a symmetric 0/1 matrix
  // with zero diagonal.
  static Graph from_adjacency(const Eigen::MatrixXd& adjacency);

  std::size_t size() const { return n_; }
  bool has_edge(int u, int v) const { return adj_[index(u, v)] != 0; }
  void add_edge(int u, int v);

  int degree(int u) const;
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  const std::vector<int>& labels() const { return labels_; }
  int label(int u) const { return labels_[static_cast<std::size_t>(u)]; }

  Eigen::MatrixXd adjacency_matrix() const;
  // Row bitmasks; requires size() <= 64.
  std::vector<std::uint64_t> row_masks() const;

  bool operator==(const Graph& other) const = default;

 private:
  friend Graph induced_subgraph(const Graph& g, std::span<const int> subset);

  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v);
  }
  void check_node(int u) const;

  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<int> labels_;
};

struct EdgeCounts {
  std::size_t internal = 0;
  std::size_t external = 0;
};

// Plain Euclidean distance on raw (lat, lon) values.
DistanceMatrix compute_distance_matrix(const PointSet& points);

// Linear-interpolation percentile, q in [0, 1]; q = 0 is the minimum and
// q = 1 the maximum. Throws InvalidInputError on an empty list.
double percentile(std::span<const double> values, double q);

// A_ij = 1 iff D_ij < d_tilde (strict) and i != j.
Graph build_adjacency(const DistanceMatrix& distances, double d_tilde);

// 2 E_S / (n_S (n_S - 1)); zero when the subset has at most one node.
double graph_density(const Graph& g, std::span<const int> subset);

Graph induced_subgraph(const Graph& g, std::span<const int> subset);

EdgeCounts edge_counts(const Graph& g, std::span<const int> subset);

// Sorts, deduplicates and range-checks a node list against a graph of size n.
NodeSet normalize_node_set(std::span<const int> nodes, std::size_t n);

}  // namespace gbsclust

#endif  // GBSCLUST_GRAPH_H_
