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

// Back-and-forth construction of isomorphisms between two random geometric
// graphs on the same rational circle, and evidence against isomorphism on
// irrational circles.

#ifndef RGC_ISOMORPHISM_HPP
#define RGC_ISOMORPHISM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rgc/oracle.hpp"

namespace rgc {

enum class Side { Source, Target };

/// A finite bijection f: S_n -> S'_n between vertices of two oracles.
/// Coordinates are taken relative to each side's origin vertex, and q, r
/// are the step decomposition of those relative coordinates.
class PartialIso {
 public:
  /// Requires a rational circumference shared by both oracles.
  PartialIso(GraphOracle& source, GraphOracle& target, VertexId source_origin = 0,
             VertexId target_origin = 0);

  GraphOracle& oracle(Side s) { return s == Side::Source ? *src_ : *dst_; }
  const GraphOracle& oracle(Side s) const { return s == Side::Source ? *src_ : *dst_; }
  VertexId origin(Side s) const { return s == Side::Source ? src_origin_ : dst_origin_; }
  std::int64_t m() const { return m_; }
  std::int64_t l() const { return l_; }

  std::size_t size() const { return pairs_.size(); }
  /// Pairs in the order they were added; the first is (origin, origin).
  const std::vector<std::pair<VertexId, VertexId>>& pairs() const { return pairs_; }
  std::optional<VertexId> image(VertexId u) const;
  std::optional<VertexId> preimage(VertexId v) const;
  std::optional<VertexId> mapped(Side s, VertexId x) const { return s == Side::Source ? image(x) : preimage(x); }

  /// Position relative to the origin of that side.
  CirclePoint relative(Side s, VertexId v) const;
  QrDecomposition qr(Side s, VertexId v) const;

  /// Adds (u, v) without checks; callers verify.
  void add(VertexId u, VertexId v);

  /// Forth and back steps performed (skips excluded).
  std::int64_t steps = 0;
  std::int64_t skips = 0;
  std::uint64_t trials = 0;

 private:
  GraphOracle* src_;
  GraphOracle* dst_;
  VertexId src_origin_, dst_origin_;
  std::int64_t l_, m_;
  std::vector<std::pair<VertexId, VertexId>> pairs_;
  std::map<VertexId, VertexId> fwd_, bwd_;
};

/// I = q_s/m + (a, b) on the other side, as an absolute open arc: the
/// images that keep the step-isometry. `from` is the side s lives on.
Arc candidate_interval(const PartialIso& iso, Side from, VertexId s);
inline Arc candidate_interval(const PartialIso& iso, VertexId s) {
  return candidate_interval(iso, Side::Source, s);
}

/// Maps s (skipping if already mapped) to a vertex of the other side in the
/// candidate interval whose adjacency to the mapped vertices matches that
/// of s. Existing unmapped vertices are tried before fresh ones. Throws
/// BudgetExhausted.
VertexId forth_step(PartialIso& iso, VertexId s, std::uint64_t budget = 0);
VertexId back_step(PartialIso& iso, VertexId s_prime, std::uint64_t budget = 0);

struct IsoCheck {
  bool ok = true;
  std::string failure;
  std::uint64_t pairs_checked = 0;
  std::uint64_t adjacency_checks = 0;
  std::uint64_t edges = 0;
};

/// Full quadratic re-check of the step-isometry and partial-isomorphism
/// invariants.
IsoCheck verify_partial_iso(const PartialIso& iso);

struct BackAndForthOptions {
  std::int64_t rounds = 0;
  std::uint64_t budget = 0;
  /// Re-verify after every step (quadratic each time).
  bool verify_each_step = false;
};

/// Outcome of a run. On budget exhaustion the iso holds the last valid
/// prefix and `failure` says which step stopped.
struct BackAndForthResult {
  std::int64_t rounds_completed = 0;
  std::optional<std::string> failure;
  std::uint64_t failed_budget = 0;
};

/// N rounds of forth + back over the pools' insertion order. Both oracles
/// must be integer-distance-free.
BackAndForthResult run_back_and_forth(PartialIso& iso, const BackAndForthOptions& opt);

/// Class variant on rational point sets closed under +1/m shifts: picks a
/// target origin whose class matches the source origin's class, then maps
/// whole classes at once by f(s + i/m) = f(s) + i/m.
class ClassIso {
 public:
  ClassIso(GraphOracle& source, GraphOracle& target, std::uint64_t origin_budget = 0);

  PartialIso& iso() { return *iso_; }
  const PartialIso& iso() const { return *iso_; }
  /// Representatives (relative coordinate in [0, 1/m)) paired per class.
  const std::vector<std::pair<VertexId, VertexId>>& classes() const { return classes_; }
  /// Members of the class of v, ordered by i in v + i/m.
  std::vector<VertexId> class_of(Side s, VertexId representative);

  std::uint64_t origin_trials = 0;

 private:
  friend VertexId forth_step_classes(ClassIso&, VertexId, std::uint64_t);
  friend VertexId back_step_classes(ClassIso&, VertexId, std::uint64_t);
  VertexId class_step(Side from, VertexId s, std::uint64_t budget);

  std::optional<PartialIso> iso_;
  std::vector<std::pair<VertexId, VertexId>> classes_;
};

/// Maps the class of representative s to a matching class of the target.
VertexId forth_step_classes(ClassIso& ci, VertexId s, std::uint64_t budget = 0);
VertexId back_step_classes(ClassIso& ci, VertexId s_prime, std::uint64_t budget = 0);

/// Fresh source representative in (0, 1/m) relative to the origin.
VertexId sample_representative(ClassIso& ci, Side s);

/// Each class maps by an exact +i/m translation.
IsoCheck verify_class_translation(ClassIso& ci);

BackAndForthResult run_class_back_and_forth(ClassIso& ci, const BackAndForthOptions& opt);

struct CandidateEvidence {
  QuadScalar rotation;
  bool reflection = false;
  std::optional<std::int64_t> first_disagreement;
  std::int64_t disagreements = 0;
  std::int64_t pairs = 0;
};

struct NonIsoReport {
  std::vector<CandidateEvidence> candidates;
  std::int64_t total_pairs = 0;
  std::int64_t total_disagreements = 0;
  double expected_rate = 0;
};

/// For each candidate isometry x -> +-x + t, samples unit-distance pairs in
/// the source and compares adjacency of their images in the target.
NonIsoReport non_iso_evidence(GraphOracle& source, GraphOracle& target, std::int64_t candidates,
                              std::int64_t pairs_per_candidate, bool include_identity = false);

nlohmann::ordered_json certificate(const PartialIso& iso, const IsoCheck& check);
/// Re-derives positions, steps and adjacency from the certificate alone.
IsoCheck verify_certificate(const nlohmann::ordered_json& cert);

nlohmann::ordered_json to_json(const NonIsoReport& r);

}  // namespace rgc

#endif  // RGC_ISOMORPHISM_HPP
