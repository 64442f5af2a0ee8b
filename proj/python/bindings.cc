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
// Python bindings. Structured results cross the boundary as JSON text and are
// decoded by the pure-python wrapper in gbsclust/__init__.py.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gbsclust/baselines.h"
#include "gbsclust/bench.h"
#include "gbsclust/error.h"
#include "gbsclust/gbs.h"
#include "gbsclust/io.h"
#include "gbsclust/matchers.h"
#include "gbsclust/metrics.h"
#include "gbsclust/qclust.h"

namespace py = pybind11;
using namespace gbsclust;

namespace {

using PointTuple = std::tuple<std::string, double, double>;

PointSet to_points(const std::vector<PointTuple>& rows) {
  std::vector<Point> pts;
  pts.reserve(rows.size());
  for (const auto& [id, lat, lon] : rows) pts.push_back({id, lat, lon});
  return PointSet(std::move(pts));
}

std::vector<PointTuple> from_points(const PointSet& points) {
  std::vector<PointTuple> rows;
  for (const Point& p : points.points()) rows.emplace_back(p.id, p.lat, p.lon);
  return rows;
}

Graph graph_for(const DistanceMatrix& d, double d_percentile,
                std::optional<double> d_tilde) {
  ClusterParams p;
  p.d_percentile = d_percentile;
  p.d_tilde = d_tilde;
  return build_adjacency(d, edge_threshold(d, p));
}

std::string clustering_json(const Clustering& c, const PointSet& points) {
  return clustering_to_json(c, points).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gaussian-boson-sampling clustering core";

  static py::exception<Error> error(m, "GbsclustError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("hafnian", [](const Eigen::MatrixXd& b) { return hafnian_fast(SymMatrix(b)); },
        py::arg("matrix"), "Hafnian of a real symmetric matrix.");
  m.def("hafnian_enumerate",
        [](const Eigen::MatrixXd& b) { return hafnian(SymMatrix(b)); },
        py::arg("matrix"), "Hafnian by explicit matching enumeration.");
  m.def("torontonian",
        [](const Eigen::MatrixXd& o) { return torontonian(SymMatrix(o)); },
        py::arg("matrix"));
  m.def("count_perfect_matchings",
        [](const Eigen::MatrixXd& a) {
          return count_perfect_matchings(Graph::from_adjacency(a));
        },
        py::arg("adjacency"));

  m.def("takagi",
        [](const Eigen::MatrixXd& a) {
          TakagiFactors f = takagi(SymMatrix(a));
          return std::make_pair(f.u, f.lambda);
        },
        py::arg("matrix"), "Returns (U, lambda) with A = U diag(lambda) U^T.");
  m.def("calibrate_scaling",
        [](const std::vector<double>& lambda, double n_mean) {
          return calibrate_scaling(lambda, n_mean);
        },
        py::arg("singular_values"), py::arg("n_mean"));
  m.def("sample",
        [](const Eigen::MatrixXd& a, double n_mean, std::size_t count,
           const std::string& mode, std::uint64_t seed) {
          py::gil_scoped_release release;
          return sample(SymMatrix(a), n_mean, count, parse_detection_mode(mode), seed)
              .samples;
        },
        py::arg("adjacency"), py::arg("n_mean"), py::arg("samples"),
        py::arg("mode") = "pnr", py::arg("seed") = 0);

  m.def("generate_dataset",
        [](std::uint64_t seed, std::size_t count, std::optional<std::size_t> blobs) {
          return from_points(generate_dataset(seed, count, GeneratorParams{}, blobs));
        },
        py::arg("seed"), py::arg("m"), py::arg("blobs") = std::nullopt);
  m.def("adjacency",
        [](const std::vector<PointTuple>& rows, double d_percentile,
           std::optional<double> d_tilde) {
          const DistanceMatrix d = compute_distance_matrix(to_points(rows));
          return graph_for(d, d_percentile, d_tilde).adjacency_matrix();
        },
        py::arg("points"), py::arg("d_percentile") = 0.35, py::arg("d_tilde") = std::nullopt);

  m.def("gbs_cluster_json",
        [](const std::vector<PointTuple>& rows, const std::string& params) {
          const PointSet points = to_points(rows);
          const ClusterParams p = ClusterParams::from_json(nlohmann::json::parse(params));
          p.validate();
          py::gil_scoped_release release;
          return clustering_json(gbs_cluster(points, p), points);
        },
        py::arg("points"), py::arg("params") = "{}");
  m.def("kmeans_json",
        [](const std::vector<PointTuple>& rows, std::optional<std::size_t> k,
           std::size_t k_max, std::uint64_t seed) {
          const PointSet points = to_points(rows);
          const std::size_t chosen =
              k ? *k : elbow_select_k(points, std::min(k_max, points.size()), seed);
          return clustering_json(kmeans(points, chosen, seed).to_clustering(seed), points);
        },
        py::arg("points"), py::arg("k") = std::nullopt, py::arg("k_max") = 10,
        py::arg("seed") = 0);
  m.def("dbscan_json",
        [](const std::vector<PointTuple>& rows, double eps, std::size_t min_pts,
           double d_percentile, std::optional<double> d_tilde) {
          const PointSet points = to_points(rows);
          const Graph g = graph_for(compute_distance_matrix(points), d_percentile, d_tilde);
          return clustering_json(dbscan_with_postprocess(points, eps, min_pts, g), points);
        },
        py::arg("points"), py::arg("eps") = 0.005, py::arg("min_pts") = 2,
        py::arg("d_percentile") = 0.35, py::arg("d_tilde") = std::nullopt);
  m.def("evaluate_json",
        [](const std::vector<PointTuple>& rows, const std::vector<NodeSet>& clusters,
           double d_percentile, std::optional<double> d_tilde) {
          const PointSet points = to_points(rows);
          const DistanceMatrix d = compute_distance_matrix(points);
          const Graph g = graph_for(d, d_percentile, d_tilde);
          return evaluate(d, g, Clustering(clusters, points.size())).to_json().dump();
        },
        py::arg("points"), py::arg("clusters"), py::arg("d_percentile") = 0.35,
        py::arg("d_tilde") = std::nullopt);
  m.def("run_benchmark_json",
        [](const std::string& config) {
          const BenchConfig c = BenchConfig::from_json(nlohmann::json::parse(config));
          py::gil_scoped_release release;
          const BenchReport r = run_benchmark(c);
          return std::make_tuple(report_csv(r), summary_json(r), r.all_ok());
        },
        py::arg("config") = "{}");
}
