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
// Command line front end: dataset generation, the three clustering methods,
// the benchmark harness and two debugging helpers (hafnian, sample).

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gbsclust/baselines.h"
#include "gbsclust/bench.h"
#include "gbsclust/error.h"
#include "gbsclust/gbs.h"
#include "gbsclust/io.h"
#include "gbsclust/matchers.h"
#include "gbsclust/metrics.h"
#include "gbsclust/qclust.h"

namespace {

using namespace gbsclust;

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// Clustering JSON plus, optionally, the metrics JSON against the shared graph.
void write_outputs(const Clustering& clustering, const PointSet& points,
                   const DistanceMatrix& d, const Graph& g,
                   const std::string& out, const std::string& metrics_out) {
  emit(out, clustering_to_json(clustering, points).dump(2) + "\n");
  if (!metrics_out.empty()) {
    emit(metrics_out, evaluate(d, g, clustering).to_json().dump(2) + "\n");
  }
}

struct GraphOptions {
  double d_percentile = 0.35;
  std::optional<double> d_tilde;
};

void add_graph_options(CLI::App* cmd, GraphOptions& opts) {
  cmd->add_option("--d-percentile", opts.d_percentile,
                  "Edge threshold as a percentile of pairwise distances")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--d-tilde", opts.d_tilde,
                  "Absolute edge threshold (overrides --d-percentile)");
}

Graph graph_for(const DistanceMatrix& d, const GraphOptions& opts) {
  ClusterParams p;
  p.d_percentile = opts.d_percentile;
  p.d_tilde = opts.d_tilde;
  return build_adjacency(d, edge_threshold(d, p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-boson-sampling clustering toolkit"};
  app.require_subcommand(1);

  // gen
  std::uint64_t gen_seed = 0;
  std::size_t gen_m = 20;
  std::optional<std::size_t> gen_blobs;
  std::string gen_out;
  GeneratorParams gen_params;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic point set CSV");
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--m", gen_m, "Number of points")->check(CLI::PositiveNumber);
  gen->add_option("--blobs", gen_blobs, "Blob count (default: drawn 2..4)");
  gen->add_option("--spread", gen_params.spread, "Blob jitter in degrees");
  gen->add_option("--out", gen_out, "Output CSV (default stdout)");

  // cluster
  std::string in_path;
  std::string out_path;
  std::string metrics_path;
  GraphOptions graph_opts;
  ClusterParams cparams;
  std::string mode_text = "pnr";
  auto* cluster = app.add_subcommand("cluster", "GBS-based clustering");
  cluster->add_option("--input", in_path, "Points CSV (id,lat,lon)")->required();
  add_graph_options(cluster, graph_opts);
  cluster->add_option("--samples", cparams.samples, "Samples per round");
  cluster->add_option("--mode", mode_text, "pnr or threshold")
      ->check(CLI::IsMember({"pnr", "threshold"}));
  cluster->add_option("--seed", cparams.seed, "Sampler seed");
  cluster->add_option("--n-mean-factor", cparams.n_mean_factor,
                      "Mean photon number per node of the current graph");
  cluster->add_option("--l-factor", cparams.l_factor,
                      "Post-selection size as a fraction of the graph");
  cluster->add_flag("!--fixed-parameters", cparams.recompute_per_iteration,
                    "Keep L and n_mean at their initial values");
  cluster->add_option("--out", out_path, "Clustering JSON (default stdout)");
  cluster->add_option("--metrics", metrics_path, "Also write metrics JSON");

  // kmeans
  std::string k_text = "auto";
  std::size_t k_max = 10;
  std::uint64_t km_seed = 0;
  auto* km = app.add_subcommand("kmeans", "k-means with elbow-selected k");
  km->add_option("--input", in_path, "Points CSV (id,lat,lon)")->required();
  km->add_option("--k", k_text, "Cluster count or 'auto'");
  km->add_option("--k-max", k_max, "Largest k tried by the elbow analysis");
  km->add_option("--seed", km_seed, "Seed for k-means++ restarts");
  add_graph_options(km, graph_opts);
  km->add_option("--out", out_path, "Clustering JSON (default stdout)");
  km->add_option("--metrics", metrics_path, "Also write metrics JSON");

  // dbscan
  DbscanParams db_params;
  bool no_postprocess = false;
  auto* db = app.add_subcommand("dbscan", "DBSCAN with noise post-processing");
  db->add_option("--input", in_path, "Points CSV (id,lat,lon)")->required();
  db->add_option("--eps", db_params.eps, "Neighbourhood radius");
  db->add_option("--min-pts", db_params.min_pts, "Core point threshold");
  db->add_flag("--no-postprocess", no_postprocess,
               "Report raw clusters and noise instead");
  add_graph_options(db, graph_opts);
  db->add_option("--out", out_path, "Clustering JSON (default stdout)");
  db->add_option("--metrics", metrics_path, "Also write metrics JSON");

  // bench
  std::string config_path;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Run the three-method benchmark");
  bench->add_option("--config", config_path, "Benchmark config JSON");
  bench->add_option("--out", bench_out, "Output directory");

  // hafnian
  std::string haf_path;
  auto* haf = app.add_subcommand("hafnian", "Perfect matchings of an edge list");
  haf->add_option("graph", haf_path, "Edge-list file")->required();

  // sample
  std::string graph_path;
  double n_mean = 1.0;
  std::size_t n_samples = 10;
  std::uint64_t sample_seed = 0;
  std::string sample_mode = "pnr";
  auto* smp = app.add_subcommand("sample", "Draw GBS subgraph samples");
  smp->add_option("--graph", graph_path, "Edge-list file")->required();
  smp->add_option("--n-mean", n_mean, "Mean photon number");
  smp->add_option("--samples", n_samples, "Number of samples");
  smp->add_option("--mode", sample_mode, "pnr or threshold")
      ->check(CLI::IsMember({"pnr", "threshold"}));
  smp->add_option("--seed", sample_seed, "Sampler seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const PointSet points =
          generate_dataset(gen_seed, gen_m, gen_params, gen_blobs);
      std::ostringstream out;
      write_points_csv(out, points);
      emit(gen_out, out.str());
    } else if (cluster->parsed()) {
      cparams.mode = parse_detection_mode(mode_text);
      cparams.d_percentile = graph_opts.d_percentile;
      cparams.d_tilde = graph_opts.d_tilde;
      const PointSet points = read_points_csv(in_path);
      const DistanceMatrix d = compute_distance_matrix(points);
      const Graph g = build_adjacency(d, edge_threshold(d, cparams));
      const Clustering c = gbs_cluster_graph(g, cparams).clustering;
      write_outputs(c, points, d, g, out_path, metrics_path);
    } else if (km->parsed()) {
      const PointSet points = read_points_csv(in_path);
      const DistanceMatrix d = compute_distance_matrix(points);
      std::size_t k = 0;
      if (k_text == "auto") {
        k = elbow_select_k(points, std::min(k_max, points.size()), km_seed);
      } else {
        k = static_cast<std::size_t>(std::stoul(k_text));
      }
      const Clustering c = kmeans(points, k, km_seed).to_clustering(km_seed);
      write_outputs(c, points, d, graph_for(d, graph_opts), out_path,
                    metrics_path);
    } else if (db->parsed()) {
      const PointSet points = read_points_csv(in_path);
      const DistanceMatrix d = compute_distance_matrix(points);
      const Graph g = graph_for(d, graph_opts);
      if (no_postprocess) {
        const DbscanResult raw = dbscan(points, db_params.eps, db_params.min_pts);
        nlohmann::json j;
        j["method"] = "dbscan";
        j["params"] = {{"eps", db_params.eps}, {"min_pts", db_params.min_pts}};
        j["clusters"] = nlohmann::json::array();
        for (const NodeSet& c : raw.clusters) {
          nlohmann::json ids = nlohmann::json::array();
          for (int u : c) ids.push_back(points[static_cast<std::size_t>(u)].id);
          j["clusters"].push_back(ids);
        }
        j["noise"] = nlohmann::json::array();
        for (int u : raw.noise) {
          j["noise"].push_back(points[static_cast<std::size_t>(u)].id);
        }
        emit(out_path, j.dump(2) + "\n");
      } else {
        const Clustering c = dbscan_with_postprocess(points, db_params.eps,
                                                     db_params.min_pts, g);
        write_outputs(c, points, d, g, out_path, metrics_path);
      }
    } else if (bench->parsed()) {
      BenchConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot open '" + config_path + "'");
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw InvalidInputError(std::string("bad config JSON: ") + e.what());
        }
        config = BenchConfig::from_json(j);
      }
      if (!bench_out.empty()) config.output_dir = bench_out;
      config.validate();
      const BenchReport report = run_benchmark(config);
      emit_report(report, config.output_dir);
      for (const MethodSummary& s : report.summary) {
        std::cout << s.method << ": silhouette " << s.silhouette.mean << " ("
                  << s.silhouette.std << "), w " << s.weighted_density.mean
                  << " (" << s.weighted_density.std << "), cohesion "
                  << s.cohesion.mean << " (" << s.cohesion.std << ")\n";
      }
      if (!report.all_ok()) {
        std::cerr << "some benchmark rows failed; see report.csv\n";
        return 1;
      }
    } else if (haf->parsed()) {
      const Graph g = read_edge_list(haf_path);
      std::cout << count_perfect_matchings(g) << "\n";
    } else if (smp->parsed()) {
      const Graph g = read_edge_list(graph_path);
      const SampleBatch batch =
          sample(SymMatrix::from_graph(g), n_mean, n_samples,
                 parse_detection_mode(sample_mode), sample_seed);
      for (const NodeSet& s : batch.samples) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          std::cout << (i ? " " : "") << s[i];
        }
        std::cout << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
