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
#ifndef GBSCLUST_MATCHERS_H_
#define GBSCLUST_MATCHERS_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gbsclust/graph.h"

namespace gbsclust {

// Real symmetric matrix (|B_ij - B_ji| <= 1e-12). The 0x0 matrix is legal.
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SymMatrix() = default;
  // Throws InvalidInputError if `values` is not square and symmetric.
  explicit SymMatrix(Eigen::MatrixXd values);
  static SymMatrix from_graph(const Graph& g);

  Eigen::Index size() const { return values_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const {
    return values_(i, j);
  }
  const Eigen::MatrixXd& values() const { return values_; }

  // Principal submatrix on the given rows/columns, in the given order.
  SymMatrix principal(std::span<const int> index) const;

 private:
  Eigen::MatrixXd values_;
};

// Largest order accepted by the 2^n dynamic programs below.
inline constexpr int kMaxSubsetOrder = 26;

// Sum over perfect matchings of the product of matched entries, by direct
// enumeration. 1 for the empty matrix, 0 for odd order.
double hafnian(const SymMatrix& b);

// Same value via a dynamic program over vertex subsets, O(2^n n) time.
double hafnian_fast(const SymMatrix& b);

// Hafnian of every principal submatrix: entry `mask` holds Haf(B_S) for the
// subset S whose bits are set in `mask`. Requires n <= kMaxSubsetOrder.
std::vector<double> hafnian_all_subsets(const SymMatrix& b);

// Hafnian of the matrix obtained by repeating row/column i reps[i] times
// (dropping it when reps[i] == 0). Memoized over multiplicity vectors, so the
// cost is prod(reps[i] + 1) states rather than the repeated matrix's order.
double hafnian_repeated(const SymMatrix& b, std::span<const int> reps);

// Number of perfect matchings of g. Throws NumericError if the Hafnian is not
// integral within 1e-6.
std::uint64_t count_perfect_matchings(const Graph& g);

// Threshold-detection matrix function of a 2m x 2m matrix O:
//   sum_{Z subset [m]} (-1)^(m-|Z|) / sqrt(det(I - O_Z))
// where O_Z keeps rows/columns z and z+m for z in Z. Throws InvalidInputError
// when some det(I - O_Z) is not positive (spectral radius >= 1).
double torontonian(const SymMatrix& o);

}  // namespace gbsclust

#endif  // GBSCLUST_MATCHERS_H_
