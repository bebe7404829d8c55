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

// Graph-theoretic recovery of the geometry: small sets, short arcs, cyclic
// order, winding numbers, good paths, distances and the circumference.
//
// Every answer is decided by adjacency and common-neighbour queries. The
// oracle's coordinates are consulted only to decide where fresh witness
// vertices should be proposed, and to certify that a set has no common
// neighbour (unit threshold).

#ifndef RGC_RECOVERY_HPP
#define RGC_RECOVERY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rgc/oracle.hpp"

namespace rgc {

struct SmallResult {
  bool small = false;
  /// No point of the circle is a possible common neighbour.
  bool certified_large = false;
  std::optional<VertexId> witness;
  std::uint64_t trials = 0;
  std::uint64_t budget = 0;
};

/// Whether some vertex is adjacent to every member of U. A negative answer
/// is either certified (unit threshold) or "not found within budget".
SmallResult is_small(GraphOracle& o, std::span<const VertexId> U, std::uint64_t budget = 0);

/// C(U): members w of `candidates` for which U + {w} is small.
std::vector<VertexId> c_set(GraphOracle& o, std::span<const VertexId> U,
                            std::span<const VertexId> candidates);

struct RecoveryStats {
  std::uint64_t membership_queries = 0;
  std::uint64_t indicator_queries = 0;
  std::uint64_t small_queries = 0;
  std::uint64_t witness_trials = 0;
  std::uint64_t contexts = 0;
};

/// Recovers short arcs A_{a,b} between adjacent vertices and everything
/// derived from them. Holds per-pair caches, so reuse one instance per oracle.
class ArcRecovery {
 public:
  explicit ArcRecovery(GraphOracle& o);

  /// w in A_{a,b}, for adjacent a, b.
  bool member(VertexId a, VertexId b, VertexId w);
  /// A_{a,b} restricted to the pool, plus a and b, in pool order.
  std::vector<VertexId> recover_arc(VertexId a, VertexId b);
  /// Same over an explicit candidate list.
  std::vector<VertexId> recover_arc(VertexId a, VertexId b, std::span<const VertexId> candidates);

  /// Indicator of ||u - v|| < L - 2. Requires 2 < L < 3.
  bool delta_indicator(VertexId u, VertexId v);

  /// A_{a,b} and A_{b,c} meet only in b. Requires a~b and b~c.
  bool cyclically_ordered(VertexId a, VertexId b, VertexId c);
  bool is_unidirectional(std::span<const VertexId> path);
  /// Number of i in [1, n-1] with v_0 in A_{v_i, v_{i+1}}.
  std::int64_t winding_number(std::span<const VertexId> path);
  /// Uni-directional, from path.front() to path.back(), first step
  /// overshooting the end.
  bool is_good(std::span<const VertexId> path);

  const RecoveryStats& stats() const { return stats_; }
  GraphOracle& oracle() { return o_; }

 private:
  struct WideContext {
    std::vector<VertexId> U1, U2;
    ArcSet R1, R2;
  };
  struct IndicatorSet {
    std::vector<VertexId> U;
  };

  bool narrow_regime() const { return narrow_; }
  const WideContext& wide_context(VertexId a, VertexId b);
  bool w_test(std::span<const VertexId> U, const ArcSet& R, VertexId w);
  bool member_wide(VertexId a, VertexId b, VertexId w);
  bool member_narrow(VertexId a, VertexId b, VertexId w);
  bool member_short(VertexId a, VertexId b, VertexId w);
  const std::vector<VertexId>& chain(VertexId a, VertexId b);
  void require_small(std::span<const VertexId> U);
  bool certified_large(std::span<const VertexId> U) const;

  GraphOracle& o_;
  bool narrow_;
  QuadScalar delta_;
  RecoveryStats stats_;
  std::map<std::pair<VertexId, VertexId>, WideContext> wide_;
  std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> chains_;
  std::map<std::pair<VertexId, VertexId>, bool> indicator_;
  std::map<std::tuple<VertexId, VertexId, VertexId>, bool> members_;
};

std::vector<VertexId> recover_arc(GraphOracle& o, VertexId a, VertexId b);
bool recover_delta_indicator(GraphOracle& o, VertexId u, VertexId v);

/// A uni-directional path.
struct UniPath {
  std::vector<VertexId> vertices;
  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

/// A good path from u to v with winding number k and length
/// floor(||u-v|| + kL) + 1, built by chaining witnesses around evenly spaced
/// anchors and then checked through recovered arcs. Requires ||u-v|| < 1.
UniPath build_good_path(ArcRecovery& rec, VertexId u, VertexId v, std::int64_t k);

/// floor(||u-v|| + kL) for k = 1..K, read off shortest good paths.
std::vector<std::int64_t> recover_distance_sequence(ArcRecovery& rec, VertexId u, VertexId v,
                                                    std::int64_t K);

/// Half-open interval [lo, hi) known to contain a distance.
struct DistanceInterval {
  QuadScalar lo;
  QuadScalar hi;
  QuadScalar width() const { return hi - lo; }
  bool contains(const QuadScalar& x) const { return lo <= x && x < hi; }
};

struct IrrationalDistance {
  DistanceInterval interval;
  /// (k, floor(x + kL)) for every k that narrowed the interval.
  std::vector<std::pair<std::int64_t, std::int64_t>> constraints;
  /// Interval after each prefix K' in `checkpoints`.
  std::vector<std::pair<std::int64_t, DistanceInterval>> checkpoints;
};

/// Intersects floor(x + kL) <= x + kL < floor(x + kL) + 1 over k <= K for
/// x = ||u-v|| and adjacent u, v. Only the k whose floor is not already
/// implied by the running interval build a good path.
IrrationalDistance recover_distance_irrational(ArcRecovery& rec, VertexId u, VertexId v,
                                               std::int64_t K,
                                               std::span<const std::int64_t> checkpoints = {});

/// Distance between arbitrary vertices as the smallest interval sum along
/// the given paths of adjacent vertices.
DistanceInterval recover_distance_paths(ArcRecovery& rec,
                                        std::span<const std::vector<VertexId>> paths,
                                        std::int64_t K);

struct AlphaEstimate {
  std::int64_t n = 0;
  /// max |N(v) & U| over the candidates tried.
  std::int64_t best_count = 0;
  Rational alpha;
  std::vector<VertexId> U;
  std::optional<VertexId> best_vertex;
  std::uint64_t trials = 0;
};

/// Evaluates max_v |N(v) & U| / |U| for U a near-uniform n-point set (one
/// vertex within 1/n of each iL/n), with candidates v drawn around the
/// densest length-2 arc.
AlphaEstimate estimate_alpha(GraphOracle& o, std::int64_t n);

struct LEstimate {
  AlphaEstimate alpha;
  Rational L_hat;
  /// Bracket from alpha +- 3/n.
  Rational lo;
  std::optional<Rational> hi;
};

LEstimate recover_L(GraphOracle& o, std::int64_t n);

nlohmann::ordered_json to_json(const DistanceInterval& d);
nlohmann::ordered_json to_json(const AlphaEstimate& a);
nlohmann::ordered_json to_json(const LEstimate& e);
nlohmann::ordered_json to_json(const RecoveryStats& s);

}  // namespace rgc

#endif  // RGC_RECOVERY_HPP
