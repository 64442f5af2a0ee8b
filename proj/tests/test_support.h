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
// Independent reference implementations and fixtures shared by the test
// binaries. Nothing here calls into the code paths it is used to check,
// except where noted.

#ifndef GBSCLUST_TESTS_TEST_SUPPORT_H_
#define GBSCLUST_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gbsclust/gbs.h"
#include "gbsclust/graph.h"
#include "gbsclust/matchers.h"

namespace gbsclust::testing {

inline Graph complete_graph(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline Graph path_graph(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

inline Graph graph_from_edges(int n, std::vector<std::pair<int, int>> edges) {
  return Graph(static_cast<std::size_t>(n), edges);
}

// Every labelled simple graph on n nodes, indexed by its edge bitmask.
inline Graph graph_from_code(int n, std::uint32_t code) {
  Graph g(static_cast<std::size_t>(n));
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if (code & (1u << bit)) g.add_edge(u, v);
    }
  }
  return g;
}

inline Eigen::MatrixXd random_symmetric_01(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) a(i, j) = a(j, i) = 1.0;
    }
  }
  return a;
}

inline Eigen::MatrixXd random_symmetric_real(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = normal(rng);
  }
  return a;
}

// Backtracking over the edge set: pick the first uncovered vertex, try every
// uncovered neighbour. Works on 0/1 matrices only.
inline std::uint64_t matchings_by_backtracking(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2 != 0) return 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::uint64_t count = 0;
  auto recurse = [&](auto&& self, int covered) -> void {
    if (covered == n) {
      ++count;
      return;
    }
    int u = 0;
    while (used[static_cast<std::size_t>(u)]) ++u;
    used[static_cast<std::size_t>(u)] = true;
    for (int v = u + 1; v < n; ++v) {
      if (!used[static_cast<std::size_t>(v)] && a(u, v) != 0.0) {
        used[static_cast<std::size_t>(v)] = true;
        self(self, covered + 2);
        used[static_cast<std::size_t>(v)] = false;
      }
    }
    used[static_cast<std::size_t>(u)] = false;
  };
  recurse(recurse, 0);
  return count;
}

// Matrix with row/column i repeated reps[i] times.
inline Eigen::MatrixXd repeat_modes(const Eigen::MatrixXd& a,
                                    const std::vector<int>& reps) {
  std::vector<int> idx;
  for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
    for (int r = 0; r < reps[static_cast<std::size_t>(i)]; ++r) idx.push_back(i);
  }
  const auto k = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index s = 0; s < k; ++s) {
      out(r, s) = a(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(s)]);
    }
  }
  return out;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Photon-number probabilities of every pattern with n_i <= cutoff, summed by
// support (the set of modes with n_i > 0). Uses probability_pnr, which the
// unit tests check separately against explicit repeated-matrix Hafnians.
inline std::vector<double> pnr_mass_by_support(const SymMatrix& a,
                                               const GbsEncoding& enc,
                                               int cutoff) {
  const int m = static_cast<int>(a.size());
  std::vector<double> mass(std::size_t{1} << m, 0.0);
  std::vector<int> pattern(static_cast<std::size_t>(m), 0);
  while (true) {
    int total = 0;
    std::uint64_t support = 0;
    for (int i = 0; i < m; ++i) {
      total += pattern[static_cast<std::size_t>(i)];
      if (pattern[static_cast<std::size_t>(i)] > 0) support |= std::uint64_t{1} << i;
    }
    if (total % 2 == 0) mass[support] += probability_pnr(a, enc, pattern);
    int i = 0;
    while (i < m && pattern[static_cast<std::size_t>(i)] == cutoff) {
      pattern[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == m) break;
    ++pattern[static_cast<std::size_t>(i)];
  }
  return mass;
}

// Threshold weight straight from the inclusion-exclusion definition, using
// the brute-force torontonian on the doubled matrix [[0, cA_S], [cA_S, 0]].
inline double threshold_weight_oracle(const SymMatrix& a, double c,
                                      const std::vector<int>& subset) {
  const auto k = static_cast<Eigen::Index>(subset.size());
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index s = 0; s < k; ++s) {
      const double v = c * a(subset[static_cast<std::size_t>(r)],
                             subset[static_cast<std::size_t>(s)]);
      o(r, k + s) = v;
      o(k + r, s) = v;
    }
  }
  return torontonian(SymMatrix(o));
}

// Hubert-Arabie adjusted Rand index between two labelings.
inline double adjusted_rand_index(const std::vector<int>& x,
                                  const std::vector<int>& y) {
  const std::size_t n = x.size();
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> row;
  std::map<int, double> col;
  for (std::size_t i = 0; i < n; ++i) {
    joint[{x[i], y[i]}] += 1.0;
    row[x[i]] += 1.0;
    col[y[i]] += 1.0;
  }
  auto pairs = [](double v) { return v * (v - 1.0) / 2.0; };
  double index = 0.0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (const auto& [key, v] : joint) index += pairs(v);
  for (const auto& [key, v] : row) sum_a += pairs(v);
  for (const auto& [key, v] : col) sum_b += pairs(v);
  const double total = pairs(static_cast<double>(n));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

// Three 5-point groups on a pentagon of radius 0.001, centres 1 apart.
inline PointSet three_clique_points() {
  const double centres[3][2] = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  std::vector<Point> pts;
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < 5; ++k) {
      const double t = 2.0 * 3.14159265358979323846 * k / 5.0;
      pts.push_back({"c" + std::to_string(c) + "_" + std::to_string(k),
                     centres[c][0] + 0.001 * std::cos(t),
                     centres[c][1] + 0.001 * std::sin(t)});
    }
  }
  return PointSet(std::move(pts));
}

inline std::vector<int> three_clique_truth() {
  std::vector<int> t;
  for (int c = 0; c < 3; ++c) {
    for (int k = 0; k < 5; ++k) t.push_back(c);
  }
  return t;
}

}  // namespace gbsclust::testing

#endif  // GBSCLUST_TESTS_TEST_SUPPORT_H_
