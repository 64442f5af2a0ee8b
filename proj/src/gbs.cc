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
#include "gbsclust/gbs.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <numeric>

#include "gbsclust/error.h"

namespace gbsclust {
namespace {

constexpr std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

double max_lambda(std::span<const double> lambda) {
  double m = 0.0;
  for (double l : lambda) {
    if (!(l >= 0.0)) throw InvalidInputError("singular values must be >= 0");
    m = std::max(m, l);
  }
  return m;
}

// All-subset PNR weights: c^|S| Haf(A_S)^2.
std::vector<double> pnr_weights(const SymMatrix& a, double c) {
  std::vector<double> w = hafnian_all_subsets(a);
  std::vector<double> c_pow(static_cast<std::size_t>(a.size()) + 1, 1.0);
  for (std::size_t k = 1; k < c_pow.size(); ++k) c_pow[k] = c_pow[k - 1] * c;
  for (std::uint64_t mask = 0; mask < w.size(); ++mask) {
    const double h = w[mask];
    w[mask] = h == 0.0 ? 0.0 : c_pow[std::popcount(mask)] * h * h;
  }
  return w;
}

// Enumerates det(P_S) det(Q_S) for every principal submatrix of two SPD
// matrices by depth-first extension: appending index j to S multiplies the
// determinant by the (j, j) entry of the Schur complement of S, and the
// complement for the children of S u {j} is one rank-one update away.
class MinorEnumerator {
 public:
  MinorEnumerator(const Eigen::MatrixXd& p, const Eigen::MatrixXd& q,
                  std::vector<double>& inv_sqrt_det)
      : n_(static_cast<int>(p.rows())), out_(inv_sqrt_det) {
    const auto levels = static_cast<std::size_t>(n_) + 1;
    schur_p_.assign(levels, Eigen::MatrixXd(n_, n_));
    schur_q_.assign(levels, Eigen::MatrixXd(n_, n_));
    schur_p_[0] = p;
    schur_q_[0] = q;
  }

  void run() {
    out_[0] = 1.0;
    visit(0, 0, 0, 1.0, 1.0);
  }

 private:
  // Level `depth` holds Schur complements over candidates first_..n-1.
  void visit(int depth, std::uint64_t mask, int first, double det_p,
             double det_q) {
    const int r = n_ - first;
    const Eigen::MatrixXd& sp = schur_p_[static_cast<std::size_t>(depth)];
    const Eigen::MatrixXd& sq = schur_q_[static_cast<std::size_t>(depth)];
    for (int k = 0; k < r; ++k) {
      const double pk = sp(k, k);
      const double qk = sq(k, k);
      if (!(pk > 0.0) || !(qk > 0.0)) {
        throw InvalidInputError(
            "scaled matrix is not physical: c * lambda_max must be < 1");
      }
      const int j = first + k;
      const std::uint64_t child = mask | bit(j);
      const double dp = det_p * pk;
      const double dq = det_q * qk;
      out_[child] = 1.0 / std::sqrt(dp * dq);
      const int rest = r - k - 1;
      if (rest == 0) continue;
      Eigen::MatrixXd& cp = schur_p_[static_cast<std::size_t>(depth) + 1];
      Eigen::MatrixXd& cq = schur_q_[static_cast<std::size_t>(depth) + 1];
      cp.topLeftCorner(rest, rest) =
          sp.block(k + 1, k + 1, rest, rest) -
          sp.block(k + 1, k, rest, 1) * sp.block(k, k + 1, 1, rest) / pk;
      cq.topLeftCorner(rest, rest) =
          sq.block(k + 1, k + 1, rest, rest) -
          sq.block(k + 1, k, rest, 1) * sq.block(k, k + 1, 1, rest) / qk;
      visit(depth + 1, child, j + 1, dp, dq);
    }
  }

  int n_;
  std::vector<double>& out_;
  std::vector<Eigen::MatrixXd> schur_p_;
  std::vector<Eigen::MatrixXd> schur_q_;
};

// All-subset threshold weights. With O = [[0, cA], [cA, 0]],
// det(I - O_Z) = det(I - cA_Z) det(I + cA_Z); the Torontonian of every S is
// then the signed subset sum of 1/sqrt(det(I - O_Z)) over Z inside S.
std::vector<double> threshold_weights(const SymMatrix& a, double c) {
  const Eigen::Index n = a.size();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> g(std::size_t{1} << n, 0.0);
  MinorEnumerator(id - c * a.values(), id + c * a.values(), g).run();
  for (int b = 0; b < n; ++b) {
    for (std::uint64_t mask = 0; mask < g.size(); ++mask) {
      if (mask & bit(b)) g[mask] -= g[mask ^ bit(b)];
    }
  }
  // Inclusion-exclusion leaves rounding residue on zero-probability sets.
  for (double& v : g) v = std::max(v, 0.0);
  return g;
}

std::uint64_t hash_key(const Eigen::MatrixXd& m, double c,
                       DetectionMode mode) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const Eigen::Index rows = m.rows();
  mix(&rows, sizeof(rows));
  mix(m.data(), sizeof(double) * static_cast<std::size_t>(m.size()));
  mix(&c, sizeof(c));
  const int tag = static_cast<int>(mode);
  mix(&tag, sizeof(tag));
  return h;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

std::string_view to_string(DetectionMode mode) {
  return mode == DetectionMode::kThreshold ? "threshold" : "pnr";
}

DetectionMode parse_detection_mode(std::string_view text) {
  if (text == "pnr") return DetectionMode::kPnrPostselected;
  if (text == "threshold") return DetectionMode::kThreshold;
  throw InvalidInputError("unknown detection mode '" + std::string(text) +
                          "' (expected pnr or threshold)");
}

Eigen::MatrixXcd TakagiFactors::reconstruct() const {
  return u * lambda.cast<std::complex<double>>().asDiagonal() * u.transpose();
}

TakagiFactors takagi(const SymMatrix& a) {
  const Eigen::Index n = a.size();
  TakagiFactors out;
  out.u = Eigen::MatrixXcd::Zero(n, n);
  out.lambda = Eigen::VectorXd::Zero(n);
  if (n == 0) return out;
  const Eigen::MatrixXd sym = 0.5 * (a.values() + a.values().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw NumericError("eigendecomposition did not converge");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&values](Eigen::Index x, Eigen::Index y) {
                     return std::abs(values(x)) > std::abs(values(y));
                   });
  const std::complex<double> phase_neg(0.0, 1.0);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    const double e = values(src);
    out.lambda(k) = std::abs(e);
    const std::complex<double> phase = e < 0.0 ? phase_neg : 1.0;
    out.u.col(k) = eig.eigenvectors().col(src).cast<std::complex<double>>() *
                   phase;
  }
  return out;
}

double mean_photon_number(std::span<const double> lambda, double c) {
  double total = 0.0;
  for (double l : lambda) {
    const double x2 = (c * l) * (c * l);
    if (!(x2 < 1.0)) {
      throw InvalidInputError("c * lambda must be < 1 for every mode");
    }
    total += x2 / (1.0 - x2);
  }
  return total;
}

double calibrate_scaling(std::span<const double> lambda, double n_mean) {
  if (!(n_mean > 0.0) || !std::isfinite(n_mean)) {
    throw InvalidInputError("mean photon number must be positive");
  }
  const double lmax = max_lambda(lambda);
  if (lmax == 0.0) {
    throw NoSolutionError("no scaling reaches a positive mean photon number "
                          "for an all-zero spectrum");
  }
  // The mean photon number is strictly increasing on (0, 1/lmax) and
  // diverges at the right end, so bisection converges to the unique root.
  double lo = 0.0;
  double hi = 1.0 / lmax;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_photon_number(lambda, mid) < n_mean) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick whichever bracket end is closer in photon number.
  const double f_lo = mean_photon_number(lambda, lo);
  if (hi * lmax >= 1.0) return lo;
  const double f_hi = mean_photon_number(lambda, hi);
  return std::abs(f_lo - n_mean) <= std::abs(f_hi - n_mean) ? lo : hi;
}

double GbsEncoding::det_sigma_q() const {
  double det = 1.0;
  for (Eigen::Index i = 0; i < takagi.lambda.size(); ++i) {
    const double x = c * takagi.lambda(i);
    det /= (1.0 - x * x);
  }
  return det;
}

GbsEncoding encode(const SymMatrix& a, double n_mean, DetectionMode mode) {
  GbsEncoding enc;
  enc.takagi = takagi(a);
  const std::vector<double> lambda(enc.takagi.lambda.data(),
                                   enc.takagi.lambda.data() +
                                       enc.takagi.lambda.size());
  enc.c = calibrate_scaling(lambda, n_mean);
  enc.n_mean = n_mean;
  enc.mode = mode;
  return enc;
}

double subset_weight(const SymMatrix& a, const GbsEncoding& enc,
                     std::span<const int> subset) {
  const NodeSet s = normalize_node_set(subset, static_cast<std::size_t>(a.size()));
  const SymMatrix sub = a.principal(s);
  const auto k = static_cast<Eigen::Index>(s.size());
  if (enc.mode == DetectionMode::kPnrPostselected) {
    if (k % 2 != 0) return 0.0;
    const double h = k >= 12 ? hafnian_fast(sub) : hafnian(sub);
    return std::pow(enc.c, static_cast<double>(k)) * h * h;
  }
  Eigen::MatrixXd o = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  o.topRightCorner(k, k) = enc.c * sub.values();
  o.bottomLeftCorner(k, k) = enc.c * sub.values();
  return torontonian(SymMatrix(std::move(o)));
}

double probability_pnr(const SymMatrix& a, const GbsEncoding& enc,
                       std::span<const int> pattern) {
  if (static_cast<Eigen::Index>(pattern.size()) != a.size()) {
    throw InvalidInputError("pattern length must equal the number of modes");
  }
  int photons = 0;
  double n_factorial = 1.0;
  for (int n : pattern) {
    if (n < 0) throw InvalidInputError("photon counts must be nonnegative");
    photons += n;
    n_factorial *= factorial(n);
  }
  const double h = hafnian_repeated(a, pattern);
  return std::pow(enc.c, photons) * h * h /
         (n_factorial * std::sqrt(enc.det_sigma_q()));
}

SubsetDistribution::SubsetDistribution(int modes, DetectionMode mode,
                                       std::vector<double> w)
    : modes_(modes), mode_(mode), weights_(std::move(w)) {
  const std::size_t blocks = (weights_.size() + kBlock - 1) / kBlock;
  block_prefix_.resize(blocks);
  double running = 0.0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t end = std::min(weights_.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) running += weights_[i];
    block_prefix_[b] = running;
  }
  total_ = running;
  if (!(total_ > 0.0) || !std::isfinite(total_)) {
    throw DegenerateGraphError("subset distribution has zero total weight");
  }
}

SubsetDistribution SubsetDistribution::build(const SymMatrix& a, double c,
                                             DetectionMode mode) {
  if (a.size() > kMaxSubsetOrder) {
    throw CapacityError("graph with " + std::to_string(a.size()) +
                        " nodes exceeds the sampler bound of " +
                        std::to_string(kMaxSubsetOrder));
  }
  std::vector<double> w = mode == DetectionMode::kPnrPostselected
                              ? pnr_weights(a, c)
                              : threshold_weights(a, c);
  return SubsetDistribution(static_cast<int>(a.size()), mode, std::move(w));
}

std::uint64_t SubsetDistribution::draw(Rng& rng) const {
  const double u = uniform01(rng) * total_;
  auto it = std::upper_bound(block_prefix_.begin(), block_prefix_.end(), u);
  if (it == block_prefix_.end()) --it;
  const auto b = static_cast<std::size_t>(it - block_prefix_.begin());
  double r = u - (b == 0 ? 0.0 : block_prefix_[b - 1]);
  const std::size_t end = std::min(weights_.size(), (b + 1) * kBlock);
  std::size_t last_positive = b * kBlock;
  for (std::size_t i = b * kBlock; i < end; ++i) {
    if (weights_[i] <= 0.0) continue;
    if (r < weights_[i]) return i;
    r -= weights_[i];
    last_positive = i;
  }
  return last_positive;
}

std::shared_ptr<const SubsetDistribution> WeightCache::get(
    const SymMatrix& a, double c, DetectionMode mode) {
  const std::uint64_t h = hash_key(a.values(), c, mode);
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (auto it = entries_.begin(); it != entries_.end(); ++it) {
      if (it->hash == h && it->c == c && it->mode == mode &&
          it->matrix.rows() == a.size() && it->matrix == a.values()) {
        entries_.splice(entries_.begin(), entries_, it);
        ++hits_;
        return entries_.front().dist;
      }
    }
    ++misses_;
  }
  auto dist = std::make_shared<const SubsetDistribution>(
      SubsetDistribution::build(a, c, mode));
  std::lock_guard<std::mutex> lock(mu_);
  if (capacity_ == 0) return dist;
  entries_.push_front(Entry{h, a.values(), c, mode, dist});
  while (entries_.size() > capacity_) entries_.pop_back();
  return dist;
}

std::size_t WeightCache::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::size_t WeightCache::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

NodeSet mask_to_nodes(std::uint64_t mask) {
  NodeSet nodes;
  for (; mask; mask &= mask - 1) nodes.push_back(std::countr_zero(mask));
  return nodes;
}

SampleBatch sample(const SymMatrix& a, double n_mean, std::size_t count,
                   DetectionMode mode, std::uint64_t seed, WeightCache* cache) {
  if (a.size() > kMaxSubsetOrder) {
    throw CapacityError("graph with " + std::to_string(a.size()) +
                        " nodes exceeds the sampler bound of " +
                        std::to_string(kMaxSubsetOrder));
  }
  SampleBatch batch;
  batch.requested = count;
  batch.seed = seed;
  batch.mode = mode;
  if (a.size() == 0 || a.values().isZero(0.0)) {
    // Only the vacuum has nonzero weight.
    batch.samples.assign(count, NodeSet{});
    return batch;
  }
  const TakagiFactors factors = takagi(a);
  const std::vector<double> lambda(
      factors.lambda.data(), factors.lambda.data() + factors.lambda.size());
  const double c = calibrate_scaling(lambda, n_mean);
  std::shared_ptr<const SubsetDistribution> dist =
      cache != nullptr ? cache->get(a, c, mode)
                       : std::make_shared<const SubsetDistribution>(
                             SubsetDistribution::build(a, c, mode));
  Rng rng(seed);
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    batch.samples.push_back(mask_to_nodes(dist->draw(rng)));
  }
  return batch;
}

}  // namespace gbsclust
