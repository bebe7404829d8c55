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

// The lazy infinite random geometric graph on a circle.
//
// Vertices are points of a dense countable set S; only the ones that have
// been referenced are materialized. Adjacency between two points is a pure
// function of (seed, positions): a keyed hash of the canonical encodings
// decides the p-thinned edge, so instantiation order never matters.

#ifndef RGC_ORACLE_HPP
#define RGC_ORACLE_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rgc/circle.hpp"
#include "rgc/quad.hpp"
#include "rgc/random.hpp"

namespace rgc {

using VertexId = std::uint32_t;

/// Pool vertices are the enumerated part of S (snapshots, back-and-forth
/// enumeration). Scratch vertices are auxiliary witnesses materialized by
/// searches: equally real members of S, just not enumerated.
enum class Tier : std::uint8_t { Pool, Scratch };

struct OracleConfig {
  QuadScalar L{3};
  Rational p{1, 2};
  std::uint64_t seed = 0;
  /// Enforce integer-distance-free insertion (rational L only).
  bool idf_mode = false;
  /// Shift sampled coordinates by sqrt2/2 so S avoids Q.
  bool irrational_offset = false;
  std::uint32_t idf_retry_budget = 64;
  /// Multiplies every default trial budget.
  double budget_scale = 1.0;
  /// Hard cap on trials for a single witness search.
  std::uint64_t max_trials = std::uint64_t{1} << 22;
};

/// A point of S that has been proposed but not materialized.
struct Candidate {
  CirclePoint pos;
  std::string enc;
  double approx;
};

struct WitnessResult {
  VertexId id;
  std::uint64_t trials;
};

struct CommonNeighborResult {
  std::optional<VertexId> witness;
  /// No point of the circle is within distance < 1 of every member, so no
  /// vertex can be adjacent to all of them.
  bool impossible = false;
  std::uint64_t trials = 0;
};

/// 64-bit keyed edge hash: SipHash-2-4 with key (seed, 0) over
/// le64(seed) || min(enc_u, enc_v) || max(enc_u, enc_v).
std::uint64_t edge_hash(std::uint64_t seed, const std::string& enc_u, const std::string& enc_v);

class GraphOracle {
 public:
  /// Creates the oracle with the origin (position 0) as vertex 0.
  explicit GraphOracle(OracleConfig config);

  const OracleConfig& config() const { return config_; }
  const QuadScalar& circumference() const { return config_.L; }
  const Rational& p() const { return config_.p; }
  std::uint64_t seed() const { return config_.seed; }

  std::size_t size() const { return vertices_.size(); }
  /// Pool-tier vertices in insertion order.
  const std::vector<VertexId>& pool() const { return pool_; }
  const CirclePoint& position(VertexId v) const { return at(v).pos; }
  const std::string& encoding(VertexId v) const { return at(v).enc; }
  Tier tier(VertexId v) const { return at(v).tier; }
  std::optional<VertexId> find(const CirclePoint& p) const;
  CirclePoint point(const QuadScalar& x) const { return CirclePoint(x, config_.L); }

  /// Materializes a vertex at an explicit position. Returns the existing id
  /// if the position is already present (promoting scratch to pool when
  /// asked). Throws UsageError if idf_mode is on and the point breaks it.
  VertexId insert(const CirclePoint& p, Tier tier = Tier::Pool);
  VertexId materialize(const Candidate& c, Tier tier = Tier::Pool) { return insert(c.pos, tier); }

  /// Whether placing a vertex at p keeps the set integer-distance-free.
  bool idf_compatible(const CirclePoint& p) const;

  bool adjacent(VertexId u, VertexId v) const;
  bool adjacent(const Candidate& c, VertexId v) const;
  bool adjacent(const Candidate& c, const Candidate& d) const;
  /// A proposal at an explicit position (not inserted).
  Candidate candidate(const CirclePoint& p) const { return make_candidate(p); }
  /// ||u - v|| < 1, decided exactly.
  bool within_unit(VertexId u, VertexId v) const;

  /// Proposes a fresh point strictly inside the open arc, drawn on a dyadic
  /// grid refined to the arc (plus the optional irrational offset). Not
  /// inserted. In idf_mode, resamples on integer-distance violations.
  Candidate propose_in_arc(const Arc& arc, Stream& rng) const;

  /// Inserts and returns a new vertex strictly inside `arc`.
  VertexId sample_vertex_in_arc(const Arc& arc, std::uint64_t rng_stream, Tier tier = Tier::Pool);

  /// A fresh vertex v within eps of s, adjacent to all of A and none of B.
  /// budget == 0 selects the default 64 (p^|A| (1-p)^|B|)^-1, capped.
  /// Throws BudgetExhausted.
  WitnessResult gec_witness(VertexId s, std::span<const VertexId> A, std::span<const VertexId> B,
                            const QuadScalar& eps, std::uint64_t budget = 0, Tier tier = Tier::Pool);
  /// Same search around an arbitrary centre point.
  WitnessResult gec_witness_at(const CirclePoint& centre, std::span<const VertexId> A,
                               std::span<const VertexId> B, const QuadScalar& eps,
                               std::uint64_t budget = 0, Tier tier = Tier::Pool);
  /// Same search inside an arbitrary open arc; nullopt when out of budget.
  std::optional<WitnessResult> find_witness(const Arc& region, std::span<const VertexId> A,
                                            std::span<const VertexId> B, std::uint64_t budget,
                                            Tier tier);

  /// Looks for a vertex adjacent to every member of U: first among already
  /// materialized vertices, then by g.e.c. densification.
  CommonNeighborResult common_neighbor(std::span<const VertexId> U, std::uint64_t budget = 0);

  /// Centres c with U inside (c-1, c+1): the open set where common neighbours
  /// of U can live.
  ArcSet centre_region(std::span<const VertexId> U) const;
  /// Points z for which U + {z} still has a common neighbour.
  ArcSet smallness_region(std::span<const VertexId> U) const;

  /// Materializes a vertex in the longest piece of a nonempty region.
  VertexId materialize_in(const ArcSet& region, Tier tier = Tier::Scratch);

  /// Ensures every gap between consecutive pool vertices is below `gap`.
  void densify(const QuadScalar& gap);

  /// Adds pool vertices forming a path of length floor(||u-v||) + 1 when
  /// ||u-v|| >= 1, or a common neighbour when u, v are close but not adjacent.
  std::vector<VertexId> realize_geodesic(VertexId u, VertexId v);

  /// Vertices whose position lies within `radius` of `centre` (both tiers).
  std::vector<VertexId> near(const CirclePoint& centre, double radius) const;

  std::uint64_t default_budget(std::size_t adjacent_to, std::size_t non_adjacent_to) const;
  /// A fresh stream index for internal searches.
  std::uint64_t next_stream() { return stream_counter_++; }

 private:
  struct Vertex {
    CirclePoint pos;
    std::string enc;
    double approx;
    double err;
    Tier tier;
  };

  const Vertex& at(VertexId v) const;
  bool edge(const std::string& eu, const std::string& ev) const;
  int unit_test(double au, double eu, double av, double ev) const;
  bool within_unit_exact(const CirclePoint& x, const CirclePoint& y) const;
  Candidate make_candidate(CirclePoint p) const;
  bool adjacent_impl(const CirclePoint& pu, const std::string& eu, double au, double erru,
                     const Vertex& v) const;

  OracleConfig config_;
  double L_approx_;
  unsigned __int128 threshold_;  // edge iff hash < threshold_
  std::deque<Vertex> vertices_;  // stable references across insertions
  std::vector<VertexId> pool_;
  std::unordered_map<std::string, VertexId> by_encoding_;
  std::multimap<double, VertexId> index_;
  std::set<QuadScalar> residues_;
  std::int64_t m_ = 0;
  std::uint64_t stream_counter_ = 0;
};

}  // namespace rgc

#endif  // RGC_ORACLE_HPP
