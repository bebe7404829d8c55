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

// Finite induced subgraphs of the oracle, frozen for pure graph algorithms.

#ifndef RGC_SNAPSHOT_HPP
#define RGC_SNAPSHOT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rgc/oracle.hpp"

namespace rgc {

class SnapshotGraph {
 public:
  std::size_t size() const { return ids_.size(); }
  const std::vector<VertexId>& ids() const { return ids_; }
  const std::vector<CirclePoint>& positions() const { return positions_; }
  /// Local index of an oracle vertex, if present.
  std::optional<std::size_t> local(VertexId v) const;
  const std::vector<std::size_t>& neighbours(std::size_t i) const { return adj_[i]; }
  bool adjacent(std::size_t i, std::size_t j) const { return matrix_[i * ids_.size() + j] != 0; }
  std::size_t edge_count() const;

  const QuadScalar& circumference() const { return L_; }
  const Rational& p() const { return p_; }
  std::uint64_t seed() const { return seed_; }

  /// BFS distances from local vertex i; -1 marks unreachable.
  std::vector<std::int64_t> bfs(std::size_t i) const;

  nlohmann::ordered_json to_json() const;
  std::string to_dot() const;

 private:
  friend SnapshotGraph snapshot(const GraphOracle&, std::optional<std::vector<VertexId>>);

  QuadScalar L_;
  Rational p_;
  std::uint64_t seed_ = 0;
  std::vector<VertexId> ids_;
  std::vector<CirclePoint> positions_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::uint8_t> matrix_;
};

/// Induced subgraph on `subset` (default: the whole pool, in pool order).
SnapshotGraph snapshot(const GraphOracle& o, std::optional<std::vector<VertexId>> subset = std::nullopt);

/// Shortest-path length between two oracle vertices, nullopt if disconnected.
std::optional<std::int64_t> graph_distance(const SnapshotGraph& g, VertexId u, VertexId v);

}  // namespace rgc

#endif  // RGC_SNAPSHOT_HPP
