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
#ifndef GBSCLUST_IO_H_
#define GBSCLUST_IO_H_

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "gbsclust/clustering.h"
#include "gbsclust/graph.h"

namespace gbsclust {

// CSV with header `id,lat,lon`, one point per row.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv(const std::string& path);
void write_points_csv(std::ostream& out, const PointSet& points);
void write_points_csv(const std::string& path, const PointSet& points);

// Edge list, one `u v` pair per line with 0-based indices. The writer emits a
// leading `# nodes <n>` comment so isolated trailing nodes survive a round
// trip; without it the reader sizes the graph as max index + 1.
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const Graph& g);

// {"method":..., "params":{...}, "clusters":[[ids...], ...]}
nlohmann::json clustering_to_json(const Clustering& clustering,
                                  const PointSet& points);

// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace gbsclust

#endif  // GBSCLUST_IO_H_
