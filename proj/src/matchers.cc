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
#include "gbsclust/matchers.h"

#include <bit>
#include <cmath>
#include <string>

#include "gbsclust/error.h"

namespace gbsclust {
namespace {

void check_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InvalidInputError("matrix must be square");
}

void check_subset_order(Eigen::Index n) {
  if (n > kMaxSubsetOrder) {
    throw CapacityError("order " + std::to_string(n) +
                        " exceeds the subset enumeration bound of " +
                        std::to_string(kMaxSubsetOrder));
  }
}

// Pairs the lowest unmatched index with every other unmatched index.
double enumerate_matchings(const Eigen::MatrixXd& b, std::vector<char>& used,
                           Eigen::Index remaining) {
  if (remaining == 0) return 1.0;
  Eigen::Index i = 0;
  while (used[static_cast<std::size_t>(i)]) ++i;
  used[static_cast<std::size_t>(i)] = 1;
  double total = 0.0;
  for (Eigen::Index j = i + 1; j < b.rows(); ++j) {
    if (used[static_cast<std::size_t>(j)] || b(i, j) == 0.0) continue;
    used[static_cast<std::size_t>(j)] = 1;
    total += b(i, j) * enumerate_matchings(b, used, remaining - 2);
    used[static_cast<std::size_t>(j)] = 0;
  }
  used[static_cast<std::size_t>(i)] = 0;
  return total;
}

}  // namespace

SymMatrix::SymMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  check_square(values_);
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (!(std::abs(values_(i, j) - values_(j, i)) <= kSymmetryTolerance)) {
        throw InvalidInputError("matrix is not symmetric at (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ")");
      }
    }
  }
}

SymMatrix SymMatrix::from_graph(const Graph& g) {
  return SymMatrix(g.adjacency_matrix());
}

SymMatrix SymMatrix::principal(std::span<const int> index) const {
  const auto k = static_cast<Eigen::Index>(index.size());
  Eigen::MatrixXd sub(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      sub(a, b) = values_(index[static_cast<std::size_t>(a)],
                          index[static_cast<std::size_t>(b)]);
    }
  }
  SymMatrix out;
  out.values_ = std::move(sub);
  return out;
}

double hafnian(const SymMatrix& b) {
  const Eigen::Index n = b.size();
  if (n % 2 != 0) return 0.0;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  return enumerate_matchings(b.values(), used, n);
}

std::vector<double> hafnian_all_subsets(const SymMatrix& b) {
  const Eigen::Index n = b.size();
  check_subset_order(n);
  const std::uint64_t full = (std::uint64_t{1} << n);
  // Nonzero pattern of each row, so sparse graphs only visit their edges.
  std::vector<std::uint64_t> support(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i != j && b(i, j) != 0.0) {
        support[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
      }
    }
  }
  std::vector<double> h(full, 0.0);
  h[0] = 1.0;
  for (std::uint64_t mask = 3; mask < full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const int i = std::countr_zero(mask);
    const std::uint64_t rest = mask & (mask - 1);
    double total = 0.0;
    for (std::uint64_t js = rest & support[static_cast<std::size_t>(i)]; js;
         js &= js - 1) {
      const int j = std::countr_zero(js);
      total += b(i, j) * h[rest & ~(std::uint64_t{1} << j)];
    }
    h[mask] = total;
  }
  return h;
}

double hafnian_fast(const SymMatrix& b) {
  const Eigen::Index n = b.size();
  if (n % 2 != 0) return 0.0;
  if (n == 0) return 1.0;
  return hafnian_all_subsets(b).back();
}

double hafnian_repeated(const SymMatrix& b, std::span<const int> reps) {
  if (static_cast<Eigen::Index>(reps.size()) != b.size()) {
    throw InvalidInputError("repetition vector length must match the matrix");
  }
  std::vector<int> modes;
  std::vector<int> counts;
  long long total = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (reps[i] < 0) throw InvalidInputError("negative repetition count");
    if (reps[i] > 0) {
      modes.push_back(static_cast<int>(i));
      counts.push_back(reps[i]);
      total += reps[i];
    }
  }
  if (total % 2 != 0) return 0.0;
  if (total == 0) return 1.0;

  // Mixed-radix index of a multiplicity vector over the kept modes.
  const std::size_t k = modes.size();
  std::vector<std::size_t> stride(k);
  std::size_t states = 1;
  constexpr std::size_t kMaxStates = std::size_t{1} << 27;
  for (std::size_t a = 0; a < k; ++a) {
    stride[a] = states;
    states *= static_cast<std::size_t>(counts[a] + 1);
    if (states > kMaxStates) {
      throw CapacityError("repeated hafnian state space too large");
    }
  }

  std::vector<double> h(states, 0.0);
  std::vector<int> r(k, 0);
  h[0] = 1.0;
  for (std::size_t idx = 1; idx < states; ++idx) {
    // Decode idx into r.
    std::size_t rem = idx;
    int photons = 0;
    for (std::size_t a = k; a-- > 0;) {
      r[a] = static_cast<int>(rem / stride[a]);
      rem %= stride[a];
      photons += r[a];
    }
    if (photons % 2 != 0) continue;
    std::size_t first = 0;
    while (r[first] == 0) ++first;
    // Pair one copy of mode `first` with any remaining copy.
    const std::size_t base = idx - stride[first];
    r[first] -= 1;
    double sum = 0.0;
    for (std::size_t a = first; a < k; ++a) {
      if (r[a] == 0) continue;
      const double entry = b(modes[first], modes[a]);
      if (entry == 0.0) continue;
      sum += entry * r[a] * h[base - stride[a]];
    }
    h[idx] = sum;
  }
  return h[states - 1];
}

std::uint64_t count_perfect_matchings(const Graph& g) {
  const SymMatrix a = SymMatrix::from_graph(g);
  const double value = hafnian_fast(a);
  const double rounded = std::round(value);
  if (!(std::abs(value - rounded) <= 1e-6) || rounded < 0.0) {
    throw NumericError("perfect matching count is not a nonnegative integer");
  }
  return static_cast<std::uint64_t>(rounded);
}

double torontonian(const SymMatrix& o) {
  const Eigen::Index n = o.size();
  if (n % 2 != 0) {
    throw InvalidInputError("torontonian needs an even-order matrix");
  }
  const Eigen::Index m = n / 2;
  if (m > 24) throw CapacityError("torontonian order too large");
  const std::uint64_t subsets = std::uint64_t{1} << m;
  double total = 0.0;
  std::vector<int> index;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    index.clear();
    for (Eigen::Index z = 0; z < m; ++z) {
      if (mask >> z & 1) index.push_back(static_cast<int>(z));
    }
    const std::size_t size = index.size();
    for (std::size_t a = 0; a < size; ++a) {
      index.push_back(index[a] + static_cast<int>(m));
    }
    double det = 1.0;
    if (!index.empty()) {
      const Eigen::MatrixXd block = o.principal(index).values();
      det = (Eigen::MatrixXd::Identity(block.rows(), block.cols()) - block)
                .partialPivLu()
                .determinant();
    }
    if (!(det > 0.0)) {
      throw InvalidInputError(
          "torontonian needs det(I - O_Z) > 0; spectral radius too large");
    }
    const double sign = (m - static_cast<Eigen::Index>(size)) % 2 == 0 ? 1.0
                                                                      : -1.0;
    total += sign / std::sqrt(det);
  }
  return total;
}

}  // namespace gbsclust
