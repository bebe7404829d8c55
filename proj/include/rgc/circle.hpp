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

// Geometry of the circle R / L Z with its intrinsic metric.

#ifndef RGC_CIRCLE_HPP
#define RGC_CIRCLE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rgc/quad.hpp"

namespace rgc {

/// x reduced into [0, L).
QuadScalar reduce_mod(const QuadScalar& x, const QuadScalar& L);

/// A point of the circle of circumference L, stored as its representative
/// in [0, L).
class CirclePoint {
 public:
  CirclePoint(QuadScalar x, QuadScalar L);

  const QuadScalar& pos() const { return pos_; }
  const QuadScalar& circumference() const { return L_; }

  /// This point moved by `delta` in the positive direction.
  CirclePoint shifted(const QuadScalar& delta) const { return {pos_ + delta, L_}; }

  friend bool operator==(const CirclePoint& x, const CirclePoint& y) {
    return x.pos_ == y.pos_ && x.L_ == y.L_;
  }

 private:
  QuadScalar pos_;
  QuadScalar L_;
};

/// Length of the positive arc from `from` to `to`, in [0, L).
QuadScalar forward_length(const CirclePoint& from, const CirclePoint& to);

/// ||u - v|| = min(|u - v|, L - |u - v|). Throws UsageError on mismatched L.
QuadScalar circle_dist(const CirclePoint& u, const CirclePoint& v);

/// +1 if the shorter arc from a to b runs in the positive direction, -1 if
/// negative, 0 if a == b. Throws UsageError for antipodal points.
int short_direction(const CirclePoint& a, const CirclePoint& b);

/// The positively oriented arc from `start` to `end` with per-endpoint
/// closure flags. start == end denotes the empty open arc (or {start} when
/// either end is closed).
struct Arc {
  CirclePoint start;
  CirclePoint end;
  bool closed_start = false;
  bool closed_end = false;

  QuadScalar length() const { return forward_length(start, end); }
  bool contains(const CirclePoint& p) const;
  /// Point at forward distance t (0 <= t <= length) from start.
  CirclePoint at(const QuadScalar& t) const { return start.shifted(t); }
};

Arc open_arc(const CirclePoint& start, const CirclePoint& end);
/// The closed shorter arc between a and b (the set A_{a,b} on the continuum).
Arc short_arc(const CirclePoint& a, const CirclePoint& b);

/// Points of `pool` in the closed shorter arc between a and b, in pool order.
std::vector<CirclePoint> short_arc_points(const CirclePoint& a, const CirclePoint& b,
                                          std::span<const CirclePoint> pool);
/// Same, as indices into `pool`.
std::vector<std::size_t> short_arc_indices(const CirclePoint& a, const CirclePoint& b,
                                           std::span<const CirclePoint> pool);

/// True iff the shorter-arc moves a -> b -> c keep one direction, i.e.
/// A_{a,b} and A_{b,c} meet only in b. Requires distinct points with
/// consecutive distances below L/2.
bool cyclically_ordered(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c);

/// For rational L = l/m: v = q/m + r with q = floor(m v) and 0 <= r < 1/m.
struct QrDecomposition {
  std::int64_t q;
  QuadScalar r;
};

QrDecomposition qr_decompose(const CirclePoint& v, std::int64_t m);

/// Numerator and denominator of a rational L in lowest terms.
std::pair<std::int64_t, std::int64_t> rational_parts(const QuadScalar& L);

/// No two points at a distance that is a multiple of 1/m.
bool is_integer_distance_free(std::span<const CirclePoint> points, std::int64_t m);

/// A finite union of open arcs, up to finitely many points. Used to describe
/// the regions where a vertex with a prescribed smallness pattern can live.
class ArcSet {
 public:
  explicit ArcSet(QuadScalar L) : L_(std::move(L)) {}

  static ArcSet full(const QuadScalar& L);
  static ArcSet empty(const QuadScalar& L) { return ArcSet(L); }
  /// The open arc of forward length `len` starting at `start`.
  static ArcSet arc(const QuadScalar& L, const QuadScalar& start, const QuadScalar& len);
  /// The open ball of radius r around c.
  static ArcSet ball(const CirclePoint& c, const QuadScalar& r);

  bool is_empty() const { return pieces_.empty(); }
  bool is_full() const;
  bool contains(const CirclePoint& p) const;

  ArcSet intersect(const ArcSet& o) const;
  ArcSet unite(const ArcSet& o) const;
  /// Interior of the complement.
  ArcSet complement() const;
  /// Points within open distance r of the set.
  ArcSet expand(const QuadScalar& r) const;

  /// Pieces as (start, forward length), wrapped pieces merged across 0.
  std::vector<std::pair<QuadScalar, QuadScalar>> arcs() const;
  /// The longest piece, as (start, forward length). Requires !is_empty().
  std::pair<QuadScalar, QuadScalar> longest() const;

  const QuadScalar& circumference() const { return L_; }

 private:
  void add_piece(QuadScalar lo, QuadScalar hi);
  void normalize();

  QuadScalar L_;
  // Sorted, disjoint open intervals (lo, hi) with 0 <= lo < hi <= L.
  std::vector<std::pair<QuadScalar, QuadScalar>> pieces_;
};

}  // namespace rgc

#endif  // RGC_CIRCLE_HPP
