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
#include "gbsclust/io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "gbsclust/error.h"

namespace gbsclust {
namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw InvalidInputError("line " + std::to_string(line_no) +
                            ": bad number '" + text + "'");
  }
  return value;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

PointSet read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<Point> points;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_commas(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "id" || fields[1] != "lat" ||
          fields[2] != "lon") {
        throw InvalidInputError("expected CSV header 'id,lat,lon'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw InvalidInputError("line " + std::to_string(line_no) +
                              ": expected 3 fields");
    }
    points.push_back(Point{fields[0], parse_double(fields[1], line_no),
                           parse_double(fields[2], line_no)});
  }
  if (!header_seen) throw InvalidInputError("empty CSV input");
  return PointSet(std::move(points));
}

PointSet read_points_csv(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_points_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  out << "id,lat,lon\n";
  for (const Point& p : points.points()) {
    out << p.id << ',' << format_double(p.lat) << ',' << format_double(p.lon)
        << '\n';
  }
}

void write_points_csv(const std::string& path, const PointSet& points) {
  std::ostringstream out;
  write_points_csv(out, points);
  write_text_file(path, out.str());
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t declared = 0;
  bool has_declared = false;
  std::vector<std::pair<int, int>> edges;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      std::size_t n = 0;
      if (ss >> key >> n && key == "nodes") {
        declared = n;
        has_declared = true;
      }
      continue;
    }
    std::istringstream ss(line);
    long long u = -1;
    long long v = -1;
    std::string rest;
    if (!(ss >> u >> v) || (ss >> rest) || u < 0 || v < 0) {
      throw InvalidInputError("line " + std::to_string(line_no) +
                              ": expected 'u v' with 0-based indices");
    }
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_node = std::max({max_node, static_cast<int>(u), static_cast<int>(v)});
  }
  const std::size_t n =
      has_declared ? declared : static_cast<std::size_t>(max_node + 1);
  if (static_cast<long long>(max_node) >= static_cast<long long>(n)) {
    throw InvalidInputError("edge endpoint exceeds declared node count");
  }
  return Graph(n, edges);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.size() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

nlohmann::json clustering_to_json(const Clustering& clustering,
                                  const PointSet& points) {
  if (clustering.point_count() != points.size()) {
    throw InvalidInputError("clustering and point set sizes differ");
  }
  nlohmann::json clusters = nlohmann::json::array();
  for (const NodeSet& c : clustering.clusters()) {
    nlohmann::json ids = nlohmann::json::array();
    for (int u : c) ids.push_back(points[static_cast<std::size_t>(u)].id);
    clusters.push_back(std::move(ids));
  }
  nlohmann::json out;
  out["method"] = clustering.method();
  out["params"] = clustering.params().is_null() ? nlohmann::json::object()
                                                : clustering.params();
  out["clusters"] = std::move(clusters);
  return out;
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw NumericError("cannot format double");
  return std::string(buf, ptr);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace gbsclust
