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
#include "gbsclust/bench.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "gbsclust/baselines.h"
#include "gbsclust/error.h"
#include "gbsclust/io.h"
#include "gbsclust/rng.h"

namespace gbsclust {
namespace {

template <typename T>
void read_pair(const nlohmann::json& j, const char* name, T& lo, T& hi) {
  if (!j.is_array() || j.size() != 2) {
    throw InvalidInputError(std::string(name) + " must be a [min, max] pair");
  }
  lo = j[0].get<T>();
  hi = j[1].get<T>();
}

void reject_unknown(const nlohmann::json& j,
                    std::initializer_list<const char*> known,
                    const char* where) {
  if (!j.is_object()) {
    throw InvalidInputError(std::string(where) + " must be a JSON object");
  }
  for (const auto& item : j.items()) {
    const bool ok = std::any_of(known.begin(), known.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!ok) {
      throw InvalidInputError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

MethodSummary summarize_method(const std::string& name,
                               const std::vector<BenchRow>& rows) {
  MethodSummary s;
  s.method = name;
  std::vector<const BenchRow*> kept;
  for (const BenchRow& r : rows) {
    if (r.method == name && r.ok) kept.push_back(&r);
  }
  s.count = kept.size();
  auto stats = [&kept](auto field) {
    MetricSummary out;
    if (kept.empty()) return out;
    double sum = 0.0;
    for (const BenchRow* r : kept) sum += field(*r);
    out.mean = sum / static_cast<double>(kept.size());
    if (kept.size() > 1) {
      double ss = 0.0;
      for (const BenchRow* r : kept) {
        const double d = field(*r) - out.mean;
        ss += d * d;
      }
      out.std = std::sqrt(ss / static_cast<double>(kept.size() - 1));
    }
    return out;
  };
  s.silhouette = stats([](const BenchRow& r) { return r.metrics.silhouette; });
  s.weighted_density =
      stats([](const BenchRow& r) { return r.metrics.weighted_density; });
  s.cohesion = stats([](const BenchRow& r) { return r.metrics.cohesion; });
  return s;
}

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

ClusterParams bench_gbs_defaults() {
  ClusterParams p;
  p.mode = DetectionMode::kThreshold;
  return p;
}

void BenchConfig::validate() const {
  if (dataset_count < 1) throw InvalidInputError("dataset_count must be >= 1");
  if (m_min < 2 || m_min > m_max) {
    throw InvalidInputError("M_range must satisfy 2 <= min <= max");
  }
  if (m_max > static_cast<std::size_t>(kMaxSubsetOrder)) {
    throw InvalidInputError("M_range exceeds the sampler capacity bound of " +
                            std::to_string(kMaxSubsetOrder));
  }
  if (generator.blobs_min < 1 || generator.blobs_min > generator.blobs_max) {
    throw InvalidInputError("blob_count_range must satisfy 1 <= min <= max");
  }
  if (!(generator.spread >= 0.0)) {
    throw InvalidInputError("spread must be nonnegative");
  }
  if (!(generator.lat_min < generator.lat_max) ||
      !(generator.lon_min < generator.lon_max)) {
    throw InvalidInputError("bounding box is degenerate");
  }
  gbs.validate();
  if (kmeans.k && *kmeans.k < 1) throw InvalidInputError("k must be >= 1");
  if (!kmeans.k && kmeans.k_max < 3) {
    throw InvalidInputError("elbow analysis needs k_max >= 3");
  }
  if (!(dbscan.eps > 0.0) || dbscan.min_pts < 1) {
    throw InvalidInputError("dbscan needs eps > 0 and min_pts >= 1");
  }
}

nlohmann::json BenchConfig::to_json() const {
  nlohmann::json j;
  j["dataset_count"] = dataset_count;
  j["M_range"] = {m_min, m_max};
  j["generator"] = {
      {"blob_count_range", {generator.blobs_min, generator.blobs_max}},
      {"spread", generator.spread},
      {"bounding_box",
       {{"lat", {generator.lat_min, generator.lat_max}},
        {"lon", {generator.lon_min, generator.lon_max}}}}};
  j["methods"]["gbs"] = gbs.to_json();
  j["methods"]["kmeans"] = {
      {"k", kmeans.k ? nlohmann::json(*kmeans.k) : nlohmann::json("auto")},
      {"k_max", kmeans.k_max},
      {"restarts", kmeans.restarts},
      {"max_iterations", kmeans.max_iterations}};
  j["methods"]["dbscan"] = {{"eps", dbscan.eps}, {"min_pts", dbscan.min_pts}};
  j["master_seed"] = master_seed;
  j["output_dir"] = output_dir;
  return j;
}

BenchConfig BenchConfig::from_json(const nlohmann::json& j) {
  reject_unknown(j,
                 {"dataset_count", "M_range", "generator", "methods",
                  "master_seed", "output_dir"},
                 "bench config");
  BenchConfig c;
  try {
    if (j.contains("dataset_count")) {
      c.dataset_count = j["dataset_count"].get<std::size_t>();
    }
    if (j.contains("M_range")) read_pair(j["M_range"], "M_range", c.m_min, c.m_max);
    if (j.contains("generator")) {
      const auto& g = j["generator"];
      reject_unknown(g, {"blob_count_range", "spread", "bounding_box"},
                     "generator");
      if (g.contains("blob_count_range")) {
        read_pair(g["blob_count_range"], "blob_count_range",
                  c.generator.blobs_min, c.generator.blobs_max);
      }
      if (g.contains("spread")) c.generator.spread = g["spread"].get<double>();
      if (g.contains("bounding_box")) {
        const auto& box = g["bounding_box"];
        reject_unknown(box, {"lat", "lon"}, "bounding_box");
        if (box.contains("lat")) {
          read_pair(box["lat"], "lat", c.generator.lat_min, c.generator.lat_max);
        }
        if (box.contains("lon")) {
          read_pair(box["lon"], "lon", c.generator.lon_min, c.generator.lon_max);
        }
      }
    }
    if (j.contains("methods")) {
      const auto& m = j["methods"];
      reject_unknown(m, {"gbs", "kmeans", "dbscan"}, "methods");
      if (m.contains("gbs")) c.gbs = ClusterParams::from_json(m["gbs"], c.gbs);
      if (m.contains("kmeans")) {
        const auto& k = m["kmeans"];
        reject_unknown(k, {"k", "k_max", "restarts", "max_iterations"},
                       "kmeans");
        if (k.contains("k")) {
          if (k["k"].is_string()) {
            if (k["k"].get<std::string>() != "auto") {
              throw InvalidInputError("kmeans.k must be \"auto\" or a count");
            }
            c.kmeans.k.reset();
          } else {
            c.kmeans.k = k["k"].get<std::size_t>();
          }
        }
        if (k.contains("k_max")) c.kmeans.k_max = k["k_max"].get<std::size_t>();
        if (k.contains("restarts")) c.kmeans.restarts = k["restarts"].get<int>();
        if (k.contains("max_iterations")) {
          c.kmeans.max_iterations = k["max_iterations"].get<int>();
        }
      }
      if (m.contains("dbscan")) {
        const auto& d = m["dbscan"];
        reject_unknown(d, {"eps", "min_pts"}, "dbscan");
        if (d.contains("eps")) c.dbscan.eps = d["eps"].get<double>();
        if (d.contains("min_pts")) {
          c.dbscan.min_pts = d["min_pts"].get<std::size_t>();
        }
      }
    }
    if (j.contains("master_seed")) {
      c.master_seed = j["master_seed"].get<std::uint64_t>();
    }
    if (j.contains("output_dir")) {
      c.output_dir = j["output_dir"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(std::string("bad bench config: ") + e.what());
  }
  c.validate();
  return c;
}

PointSet generate_dataset(std::uint64_t seed, std::size_t m,
                          const GeneratorParams& params,
                          std::optional<std::size_t> blobs) {
  if (m < 2) throw InvalidInputError("dataset needs at least 2 points");
  if (!(params.lat_min < params.lat_max) || !(params.lon_min < params.lon_max)) {
    throw InvalidInputError("bounding box is degenerate");
  }
  if (!(params.spread >= 0.0)) {
    throw InvalidInputError("spread must be nonnegative");
  }
  Rng rng(seed);
  std::size_t b = 0;
  if (blobs) {
    b = *blobs;
  } else {
    if (params.blobs_min < 1 || params.blobs_min > params.blobs_max) {
      throw InvalidInputError("blob count range must satisfy 1 <= min <= max");
    }
    const std::size_t span = params.blobs_max - params.blobs_min + 1;
    b = params.blobs_min +
        std::min(span - 1, static_cast<std::size_t>(uniform01(rng) *
                                                    static_cast<double>(span)));
  }
  if (b < 1) throw InvalidInputError("blob count must be at least 1");
  std::vector<std::array<double, 2>> centres(b);
  for (auto& c : centres) {
    c[0] = params.lat_min + uniform01(rng) * (params.lat_max - params.lat_min);
    c[1] = params.lon_min + uniform01(rng) * (params.lon_max - params.lon_min);
  }
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::vector<Point> points;
  points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = centres[i % b];
    const double dx = jitter(rng) * params.spread;
    const double dy = jitter(rng) * params.spread;
    points.push_back(Point{"p" + std::to_string(i), c[0] + dx, c[1] + dy});
  }
  return PointSet(std::move(points));
}

const std::vector<std::string>& bench_methods() {
  static const std::vector<std::string> kMethods = {"kmeans", "dbscan", "gbs"};
  return kMethods;
}

bool BenchReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.ok; });
}

const MethodSummary& BenchReport::method(const std::string& name) const {
  for (const MethodSummary& s : summary) {
    if (s.method == name) return s;
  }
  throw InvalidInputError("no summary for method '" + name + "'");
}

std::vector<MethodSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<MethodSummary> out;
  for (const std::string& name : bench_methods()) {
    out.push_back(summarize_method(name, rows));
  }
  return out;
}

BenchReport run_benchmark_on(const std::vector<PointSet>& datasets,
                             const BenchConfig& config) {
  config.gbs.validate();
  BenchReport report;
  // TODO: datasets are independent; run them on a thread pool and merge rows
  // by dataset index.
  for (std::size_t id = 0; id < datasets.size(); ++id) {
    const PointSet& points = datasets[id];
    const std::uint64_t ds_seed = derive_seed(config.master_seed, id);
    const DistanceMatrix d = compute_distance_matrix(points);
    const Graph g = build_adjacency(d, edge_threshold(d, config.gbs));

    for (const std::string& method : bench_methods()) {
      BenchRow row;
      row.dataset_id = id;
      row.method = method;
      row.points = points.size();
      try {
        std::optional<Clustering> clustering;
        if (method == "gbs") {
          ClusterParams params = config.gbs;
          params.seed = derive_seed(ds_seed, 1);
          clustering = gbs_cluster_graph(g, params).clustering;
        } else if (method == "kmeans") {
          const std::uint64_t seed = derive_seed(ds_seed, 2);
          KMeansOptions options{config.kmeans.restarts,
                                config.kmeans.max_iterations};
          std::size_t k = 0;
          if (config.kmeans.k) {
            k = std::min(*config.kmeans.k, points.size());
          } else {
            k = elbow_analysis(points,
                               std::min(config.kmeans.k_max, points.size()),
                               seed, options)
                    .k;
          }
          clustering = kmeans(points, k, seed, options).to_clustering(seed);
        } else {
          clustering = dbscan_with_postprocess(points, config.dbscan.eps,
                                               config.dbscan.min_pts, g);
        }
        row.clusters = clustering->cluster_count();
        row.metrics = evaluate(d, g, *clustering);
        row.ok = true;
      } catch (const Error& e) {
        row.ok = false;
        row.error = e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }
  report.summary = summarize(report.rows);
  return report;
}

BenchReport run_benchmark(const BenchConfig& config) {
  config.validate();
  std::vector<PointSet> datasets;
  datasets.reserve(config.dataset_count);
  for (std::size_t id = 0; id < config.dataset_count; ++id) {
    const std::uint64_t ds_seed = derive_seed(config.master_seed, id);
    Rng size_rng(derive_seed(ds_seed, 3));
    const std::size_t span = config.m_max - config.m_min + 1;
    const std::size_t m =
        config.m_min +
        std::min(span - 1, static_cast<std::size_t>(
                               uniform01(size_rng) * static_cast<double>(span)));
    datasets.push_back(
        generate_dataset(derive_seed(ds_seed, 0), m, config.generator));
  }
  return run_benchmark_on(datasets, config);
}

std::string report_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "dataset_id,method,silhouette,w,cohesion,M,clusters,status\n";
  for (const BenchRow& r : report.rows) {
    out << r.dataset_id << ',' << r.method << ',';
    if (r.ok) {
      out << format_double(r.metrics.silhouette) << ','
          << format_double(r.metrics.weighted_density) << ','
          << format_double(r.metrics.cohesion);
    } else {
      out << ",,";
    }
    out << ',' << r.points << ',' << r.clusters << ','
        << (r.ok ? std::string("ok") : "error: " + csv_safe(r.error)) << '\n';
  }
  return out.str();
}

std::string summary_json(const BenchReport& report) {
  nlohmann::json methods = nlohmann::json::array();
  for (const MethodSummary& s : report.summary) {
    auto pack = [](const MetricSummary& m) {
      return nlohmann::json{{"mean", m.mean}, {"std", m.std}};
    };
    methods.push_back({{"method", s.method},
                       {"count", s.count},
                       {"silhouette", pack(s.silhouette)},
                       {"weighted_density", pack(s.weighted_density)},
                       {"cohesion", pack(s.cohesion)}});
  }
  std::size_t failed = 0;
  for (const BenchRow& r : report.rows) failed += r.ok ? 0 : 1;
  nlohmann::json j{{"rows", report.rows.size()},
                   {"failed_rows", failed},
                   {"methods", std::move(methods)}};
  return j.dump(2) + "\n";
}

void emit_report(const BenchReport& report, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "'");
  const std::filesystem::path base(dir);
  write_text_file((base / "report.csv").string(), report_csv(report));
  write_text_file((base / "summary.json").string(), summary_json(report));
}

}  // namespace gbsclust
