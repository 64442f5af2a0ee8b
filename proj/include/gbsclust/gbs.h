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
#ifndef GBSCLUST_GBS_H_
#define GBSCLUST_GBS_H_

#include <cstddef>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gbsclust/graph.h"
#include "gbsclust/matchers.h"
#include "gbsclust/rng.h"

namespace gbsclust {

enum class DetectionMode {
  // Photon-number-resolving detection, keeping only 0/1 patterns.
  kPnrPostselected,
  // Click/no-click detection; weights are Torontonians.
  kThreshold,
};

std::string_view to_string(DetectionMode mode);
// Accepts "pnr" and "threshold".
DetectionMode parse_detection_mode(std::string_view text);

// A = U diag(lambda) U^T with U unitary and lambda >= 0 sorted descending.
// For a real symmetric A, U is the real eigenbasis with the columns of
// negative eigenvalues multiplied by i.
struct TakagiFactors {
  Eigen::MatrixXcd u;
  Eigen::VectorXd lambda;

  Eigen::MatrixXcd reconstruct() const;
};

TakagiFactors takagi(const SymMatrix& a);

// Sum_i (c l_i)^2 / (1 - (c l_i)^2); requires c * max(l) < 1.
double mean_photon_number(std::span<const double> lambda, double c);

// The unique c in (0, 1/max(lambda)) whose mean photon number is n_mean.
// Throws NoSolutionError when every lambda is zero.
double calibrate_scaling(std::span<const double> lambda, double n_mean);

struct GbsEncoding {
  TakagiFactors takagi;
  double c = 0.0;
  double n_mean = 0.0;
  DetectionMode mode = DetectionMode::kPnrPostselected;

  // det(sigma_Q) = prod_i 1 / (1 - (c lambda_i)^2) for the pure graph state.
  double det_sigma_q() const;
};

GbsEncoding encode(const SymMatrix& a, double n_mean,
                   DetectionMode mode = DetectionMode::kPnrPostselected);

// Unnormalized probability of detecting exactly the modes in `subset`:
// c^|S| Haf(A_S)^2 in PNR mode, the Torontonian of the pure-state O matrix
// restricted to S in threshold mode.
double subset_weight(const SymMatrix& a, const GbsEncoding& enc,
                     std::span<const int> subset);

// Probability of a full photon-count pattern:
//   c^s Haf(A_n)^2 / (n! sqrt(det sigma_Q)).
double probability_pnr(const SymMatrix& a, const GbsEncoding& enc,
                       std::span<const int> pattern);

// Exact weights of every subset of modes (indexed by bitmask) together with a
// blocked prefix sum for drawing from the normalized distribution.
class SubsetDistribution {
 public:
  // Requires a.size() <= kMaxSubsetOrder.
  static SubsetDistribution build(const SymMatrix& a, double c,
                                  DetectionMode mode);

  int modes() const { return modes_; }
  DetectionMode mode() const { return mode_; }
  double total_weight() const { return total_; }
  double weight(std::uint64_t mask) const { return weights_[mask]; }
  double probability(std::uint64_t mask) const {
    return weights_[mask] / total_;
  }
  std::span<const double> weights() const { return weights_; }

  std::uint64_t draw(Rng& rng) const;

 private:
  static constexpr std::size_t kBlock = 1024;

  SubsetDistribution(int modes, DetectionMode mode, std::vector<double> w);

  int modes_ = 0;
  DetectionMode mode_ = DetectionMode::kPnrPostselected;
  std::vector<double> weights_;
  std::vector<double> block_prefix_;
  double total_ = 0.0;
};

// Small LRU cache of subset distributions keyed by (A, c, mode) contents.
// Safe to use from several threads; returned distributions are immutable.
class WeightCache {
 public:
  explicit WeightCache(std::size_t capacity = 2) : capacity_(capacity) {}

  std::shared_ptr<const SubsetDistribution> get(const SymMatrix& a, double c,
                                                DetectionMode mode);

  std::size_t hits() const;
  std::size_t misses() const;

 private:
  struct Entry {
    std::uint64_t hash;
    Eigen::MatrixXd matrix;
    double c;
    DetectionMode mode;
    std::shared_ptr<const SubsetDistribution> dist;
  };

  std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Entry> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct SampleBatch {
  std::vector<NodeSet> samples;
  std::size_t requested = 0;
  std::uint64_t seed = 0;
  DetectionMode mode = DetectionMode::kPnrPostselected;
};

// Draws `count` independent subsets from the exact distribution of the graph
// encoded by `a` at mean photon number `n_mean`. A zero matrix yields only
// empty samples. Throws CapacityError beyond kMaxSubsetOrder modes.
SampleBatch sample(const SymMatrix& a, double n_mean, std::size_t count,
                   DetectionMode mode, std::uint64_t seed,
                   WeightCache* cache = nullptr);

NodeSet mask_to_nodes(std::uint64_t mask);

}  // namespace gbsclust

#endif  // GBSCLUST_GBS_H_
