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

#include <algorithm>

#include "doctest.h"
#include "rgc/recovery.hpp"
#include "rgc/snapshot.hpp"

using namespace rgc;

namespace {

QuadScalar r(long a, long b = 1) { return QuadScalar(make_rational(a, b)); }
const QuadScalar kIrr = QuadScalar(2) + QuadScalar::sqrt2();

OracleConfig cfg(QuadScalar L, std::uint64_t seed, Rational p = Rational(1, 2)) {
  OracleConfig c;
  c.L = std::move(L);
  c.p = std::move(p);
  c.seed = seed;
  return c;
}

// First seed from `seed` on for which the listed position pairs are edges.
std::uint64_t seed_with_edges(const QuadScalar& L, const std::vector<std::pair<QuadScalar, QuadScalar>>& edges,
                              std::uint64_t seed = 1) {
  for (;; ++seed) {
    GraphOracle o(cfg(L, seed));
    bool ok = true;
    for (const auto& [x, y] : edges) {
      VertexId a = o.insert(o.point(x)), b = o.insert(o.point(y));
      ok = ok && o.adjacent(a, b);
    }
    if (ok) return seed;
  }
}

std::vector<VertexId> geometric_arc(const GraphOracle& o, VertexId a, VertexId b) {
  std::vector<VertexId> out;
  Arc arc = short_arc(o.position(a), o.position(b));
  for (VertexId v : o.pool())
    if (arc.contains(o.position(v))) out.push_back(v);
  for (VertexId e : {a, b})
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

std::vector<VertexId> sorted(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Adjacent pairs (a, b) with a from the pool and b a fresh witness at a
// random distance below 1.
std::vector<std::pair<VertexId, VertexId>> random_pairs(GraphOracle& o, int count, std::uint64_t tag) {
  Stream rng(o.seed(), "test-pairs", tag);
  std::vector<std::pair<VertexId, VertexId>> out;
  for (int i = 0; i < count; ++i) {
    VertexId a = o.pool()[rng.below(o.pool().size())];
    QuadScalar d = r(static_cast<long>(rng.below(900)) + 50, 1000);
    if (rng.below(2)) d = -d;
    VertexId A[] = {a};
    QuadScalar eps = qs_mul_rat(QuadScalar(1) - abs(d), Rational(1, 4));
    eps = min(eps, r(1, 50));
    out.emplace_back(a, o.gec_witness_at(o.position(a).shifted(d), A, {}, eps).id);
  }
  return out;
}

}  // namespace

TEST_SUITE("recovery") {

TEST_CASE("small sets") {
  GraphOracle o(cfg(3, 4));
  std::vector<VertexId> one{0};
  CHECK(is_small(o, one).small);
  std::vector<VertexId> U{0, o.insert(o.point(r(9, 10))), o.insert(o.point(r(1, 2)))};
  CHECK(is_small(o, U).small);
  GraphOracle f(cfg(4, 4));
  std::vector<VertexId> far{0, f.insert(f.point(2))};
  SmallResult res = is_small(f, far);
  CHECK_FALSE(res.small);
  CHECK(res.certified_large);
}

TEST_CASE("C(U)") {
  GraphOracle o(cfg(4, 9));
  VertexId h = o.insert(o.point(r(1, 2)));
  VertexId two = o.insert(o.point(2));
  VertexId near = o.insert(o.point(r(3, 4)));
  std::vector<VertexId> none;
  CHECK(c_set(o, none, o.pool()) == o.pool());
  std::vector<VertexId> U{0, h};
  auto c = c_set(o, U, o.pool());
  CHECK(std::find(c.begin(), c.end(), 0) != c.end());
  CHECK(std::find(c.begin(), c.end(), h) != c.end());
  CHECK(std::find(c.begin(), c.end(), near) != c.end());
  CHECK(std::find(c.begin(), c.end(), two) == c.end());
}

TEST_CASE("arc example, L >= 3") {
  QuadScalar L = r(7, 2);
  GraphOracle o(cfg(L, seed_with_edges(L, {{0, r(1, 2)}})));
  VertexId q = o.insert(o.point(r(1, 4)));
  VertexId b = o.insert(o.point(r(1, 2)));
  o.insert(o.point(2));
  CHECK(sorted(recover_arc(o, 0, b)) == sorted({0, q, b}));
}

TEST_CASE("arc example, 2 < L < 3") {
  QuadScalar L = r(5, 2);
  GraphOracle o(cfg(L, seed_with_edges(L, {{0, r(3, 4)}})));
  VertexId b = o.insert(o.point(r(3, 4)));
  o.densify(r(1, 8));
  auto rec = recover_arc(o, 0, b);
  CHECK(sorted(rec) == sorted(geometric_arc(o, 0, b)));
  CHECK(rec.size() > 4);
}

TEST_CASE("delta indicator") {
  GraphOracle o(cfg(r(5, 2), 3));
  VertexId one = o.insert(o.point(1));
  VertexId quarter = o.insert(o.point(r(1, 4)));
  CHECK(recover_delta_indicator(o, 0, 0));
  CHECK_FALSE(recover_delta_indicator(o, 0, one));
  CHECK(recover_delta_indicator(o, 0, quarter));
  CHECK(recover_delta_indicator(o, quarter, o.insert(o.point(r(-1, 10)))));
  GraphOracle wide(cfg(3, 1));
  CHECK_THROWS_AS(recover_delta_indicator(wide, 0, 0), UsageError);
}

TEST_CASE("arc recovery matches geometry on random pairs") {
  for (QuadScalar L : {r(7, 2), kIrr, r(5, 2), r(23, 10)}) {
    GraphOracle o(cfg(L, 77));
    o.densify(r(1, 6));
    ArcRecovery rec(o);
    for (auto [a, b] : random_pairs(o, 6, 1)) CHECK(sorted(rec.recover_arc(a, b)) == sorted(geometric_arc(o, a, b)));
  }
}

TEST_CASE("cyclic order, unidirectional paths and winding") {
  GraphOracle o(cfg(r(7, 2), 8));
  ArcRecovery rec(o);
  // Hops of about 0.6 with total arc length about 7.2 = 2L + 0.2.
  std::vector<VertexId> path{0};
  for (long i = 1; i <= 12; ++i) {
    VertexId prev[] = {path.back()};
    path.push_back(o.gec_witness_at(o.point(r(6 * i, 10)), prev, {}, r(1, 50)).id);
  }
  std::vector<VertexId> two(path.begin(), path.begin() + 3);
  CHECK(rec.is_unidirectional(two));
  CHECK(rec.winding_number(two) == 0);
  CHECK(rec.is_unidirectional(path));
  CHECK(rec.winding_number(path) == 2);
  VertexId mid[] = {path[1]};
  VertexId back = o.gec_witness_at(o.point(r(3, 10)), mid, {}, r(1, 50)).id;
  std::vector<VertexId> bt{path[0], path[1], back};
  CHECK_FALSE(rec.cyclically_ordered(path[0], path[1], back));
  CHECK_FALSE(rec.is_unidirectional(bt));
  CHECK(rec.cyclically_ordered(path[0], path[1], path[2]));
  CHECK(rec.cyclically_ordered(path[2], path[1], path[0]));
}

TEST_CASE("good path lengths") {
  {
    GraphOracle o(cfg(r(7, 2), 5));
    VertexId v = o.insert(o.point(r(1, 2)));
    ArcRecovery rec(o);
    UniPath p = build_good_path(rec, 0, v, 1);
    CHECK(p.length() == 5);
    CHECK(rec.is_good(p.vertices));
    CHECK(rec.winding_number(p.vertices) == 1);
  }
  {
    GraphOracle o(cfg(kIrr, 5));
    VertexId v = o.insert(o.point(r(1, 2)));
    ArcRecovery rec(o);
    UniPath p = build_good_path(rec, v, 0, 1);
    CHECK(p.length() == 4);
    CHECK(rec.is_good(p.vertices));
  }
  {
    GraphOracle o(cfg(r(5, 2), 5));
    VertexId v = o.insert(o.point(r(-1, 3)));
    ArcRecovery rec(o);
    for (std::int64_t k = 1; k <= 3; ++k) {
      UniPath p = build_good_path(rec, 0, v, k);
      CHECK(p.length() == static_cast<std::size_t>(qs_floor_i64(r(1, 3) + qs_mul_rat(r(5, 2), k))) + 1);
      CHECK(rec.winding_number(p.vertices) == k);
    }
  }
}

TEST_CASE("distance sequences") {
  {
    QuadScalar L = 3;
    GraphOracle o(cfg(L, seed_with_edges(L, {{0, r(1, 2)}})));
    VertexId v = o.insert(o.point(r(1, 2)));
    ArcRecovery rec(o);
    CHECK(recover_distance_sequence(rec, 0, v, 2) == std::vector<std::int64_t>{3, 6});
  }
  {
    GraphOracle o(cfg(kIrr, seed_with_edges(kIrr, {{0, r(1, 2)}})));
    VertexId v = o.insert(o.point(r(1, 2)));
    ArcRecovery rec(o);
    CHECK(recover_distance_sequence(rec, 0, v, 3) == std::vector<std::int64_t>{3, 7, 10});
  }
  {
    QuadScalar L = 3;
    GraphOracle o(cfg(L, seed_with_edges(L, {{0, r(1, 1000)}})));
    VertexId v = o.insert(o.point(r(1, 1000)));
    ArcRecovery rec(o);
    CHECK(recover_distance_sequence(rec, 0, v, 4) == std::vector<std::int64_t>{3, 6, 9, 12});
  }
}

TEST_CASE("irrational distance intervals") {
  GraphOracle o(cfg(kIrr, seed_with_edges(kIrr, {{0, r(1, 2)}})));
  VertexId v = o.insert(o.point(r(1, 2)));
  ArcRecovery rec(o);
  std::int64_t cps[] = {10, 25, 50};
  IrrationalDistance d = recover_distance_irrational(rec, 0, v, 50, cps);
  CHECK(d.interval.contains(r(1, 2)));
  CHECK(d.interval.width() < r(1, 10));
  REQUIRE(d.checkpoints.size() == 3);
  for (std::size_t i = 0; i + 1 < d.checkpoints.size(); ++i) {
    const auto& a = d.checkpoints[i].second;
    const auto& b = d.checkpoints[i + 1].second;
    CHECK(a.lo <= b.lo);
    CHECK(b.hi <= a.hi);
    CHECK(b.contains(r(1, 2)));
  }
}

TEST_CASE("distances along paths") {
  GraphOracle o(cfg(kIrr, 31));
  VertexId v = o.insert(o.point(r(3, 2)));
  o.realize_geodesic(0, v);
  auto g = snapshot(o);
  // Walk the geodesic: the pool now holds one hop vertex between 0 and v.
  std::vector<VertexId> path{0};
  for (VertexId w : o.pool())
    if (w != 0 && w != v && o.adjacent(0, w) && o.adjacent(w, v)) {
      path.push_back(w);
      break;
    }
  path.push_back(v);
  REQUIRE(path.size() == 3);
  ArcRecovery rec(o);
  std::vector<std::vector<VertexId>> paths{path};
  DistanceInterval d = recover_distance_paths(rec, paths, 30);
  CHECK(d.contains(r(3, 2)));
  CHECK(d.width() < r(1, 2));
}

TEST_CASE("alpha estimate") {
  GraphOracle o(cfg(4, 12, Rational(9, 10)));
  AlphaEstimate a = estimate_alpha(o, 64);
  CHECK(a.alpha >= Rational(1, 2) - Rational(3, 64));
  CHECK(a.alpha <= Rational(1, 2) + Rational(3, 64));
  LEstimate e = recover_L(o, 64);
  CHECK(e.lo <= 4);
  REQUIRE(e.hi);
  CHECK(*e.hi >= 4);
  GraphOracle big(cfg(5, 12, Rational(9, 10)));
  CHECK(estimate_alpha(big, 64).alpha < a.alpha);
}

}
