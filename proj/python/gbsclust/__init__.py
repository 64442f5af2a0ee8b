# Copyright 2026 The gbsclust Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Graph clustering by simulated Gaussian boson sampling.

Points are ``(id, lat, lon)`` tuples. Clusterings come back as dicts of the
form ``{"method": ..., "params": {...}, "clusters": [[ids, ...], ...]}``.
"""

import json

from . import _core
from ._core import (
    GbsclustError,
    adjacency,
    calibrate_scaling,
    count_perfect_matchings,
    generate_dataset,
    hafnian,
    hafnian_enumerate,
    sample,
    takagi,
    torontonian,
)

__all__ = [
    "GbsclustError",
    "adjacency",
    "calibrate_scaling",
    "count_perfect_matchings",
    "dbscan",
    "evaluate",
    "gbs_cluster",
    "generate_dataset",
    "hafnian",
    "hafnian_enumerate",
    "kmeans",
    "run_benchmark",
    "sample",
    "takagi",
    "torontonian",
]


def gbs_cluster(points, **params):
    """Cluster points with the sampling-based densest-subgraph loop.

    Keyword arguments are the cluster parameters (``d_percentile``,
    ``d_tilde``, ``samples``, ``mode``, ``seed``, ...).
    """
    return json.loads(_core.gbs_cluster_json(list(points), json.dumps(params)))


def kmeans(points, k=None, k_max=10, seed=0):
    """k-means; ``k=None`` picks k by the elbow rule over 1..k_max."""
    return json.loads(_core.kmeans_json(list(points), k, k_max, seed))


def dbscan(points, eps=0.005, min_pts=2, d_percentile=0.35, d_tilde=None):
    """DBSCAN with noise points reassigned along graph edges."""
    return json.loads(
        _core.dbscan_json(list(points), eps, min_pts, d_percentile, d_tilde))


def evaluate(points, clustering, d_percentile=0.35, d_tilde=None):
    """Silhouette, weighted density and cohesion of a clustering.

    ``clustering`` is either a clustering dict (ids) or a list of index lists.
    """
    points = list(points)
    clusters = clustering["clusters"] if isinstance(clustering, dict) else clustering
    index = {p[0]: i for i, p in enumerate(points)}
    as_indices = [[index[u] if isinstance(u, str) else int(u) for u in c]
                  for c in clusters]
    return json.loads(
        _core.evaluate_json(points, as_indices, d_percentile, d_tilde))


def run_benchmark(config=None):
    """Runs the three-method benchmark; returns (report_csv, summary, all_ok)."""
    csv, summary, ok = _core.run_benchmark_json(json.dumps(config or {}))
    return csv, json.loads(summary), ok
