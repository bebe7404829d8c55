/* Copyright 2026 The rgc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rgc/snapshot.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace rgc {

SnapshotGraph snapshot(const GraphOracle& o, std::optional<std::vector<VertexId>> subset) {
  SnapshotGraph g;
  g.L_ = o.circumference();
  g.p_ = o.p();
  g.seed_ = o.seed();
  g.ids_ = subset ? *subset : o.pool();
  std::set<VertexId> seen;
  for (VertexId v : g.ids_) {
    if (!seen.insert(v).second) throw UsageError("snapshot subset repeats a vertex");
    g.positions_.push_back(o.position(v));
  }
  const std::size_t n = g.ids_.size();
  g.adj_.assign(n, {});
  g.matrix_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!o.adjacent(g.ids_[i], g.ids_[j])) continue;
      g.matrix_[i * n + j] = g.matrix_[j * n + i] = 1;
      g.adj_[i].push_back(j);
      g.adj_[j].push_back(i);
    }
  }
  return g;
}

std::optional<std::size_t> SnapshotGraph::local(VertexId v) const {
  for (std::size_t i = 0; i < ids_.size(); ++i)
    if (ids_[i] == v) return i;
  return std::nullopt;
}

std::size_t SnapshotGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& a : adj_) e += a.size();
  return e / 2;
}

std::vector<std::int64_t> SnapshotGraph::bfs(std::size_t i) const {
  std::vector<std::int64_t> dist(size(), -1);
  std::deque<std::size_t> queue{i};
  dist[i] = 0;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (std::size_t y : adj_[x]) {
      if (dist[y] >= 0) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

std::optional<std::int64_t> graph_distance(const SnapshotGraph& g, VertexId u, VertexId v) {
  auto iu = g.local(u);
  auto iv = g.local(v);
  if (!iu || !iv) throw UsageError("vertex not in snapshot");
  std::int64_t d = g.bfs(*iu)[*iv];
  if (d < 0) return std::nullopt;
  return d;
}

nlohmann::ordered_json SnapshotGraph::to_json() const {
  nlohmann::ordered_json j;
  j["L"] = encode(L_);
  j["p"] = encode_rational(p_);
  j["seed"] = seed_;
  auto& vs = j["vertices"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < size(); ++i)
    vs.push_back({{"id", ids_[i]}, {"pos", encode(positions_[i].pos())}});
  auto& es = j["edges"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k : adj_[i])
      if (i < k) es.push_back({ids_[i], ids_[k]});
  return j;
}

std::string SnapshotGraph::to_dot() const {
  // Vertices are pinned on a circle so neato reproduces the geometric layout.
  std::ostringstream out;
  out << "graph G {\n  layout=neato;\n  node [shape=point];\n";
  const double L = L_.approx();
  const double radius = L / (2 * 3.141592653589793);
  for (std::size_t i = 0; i < size(); ++i) {
    double t = 2 * 3.141592653589793 * positions_[i].pos().approx() / L;
    out << "  v" << ids_[i] << " [label=\"" << to_display(positions_[i].pos()) << "\", pos=\""
        << radius * std::cos(t) << "," << radius * std::sin(t) << "!\"];\n";
  }
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k : adj_[i])
      if (i < k) out << "  v" << ids_[i] << " -- v" << ids_[k] << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace rgc
