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

#include <cmath>

#include "doctest.h"
#include "rgc/oracle.hpp"
#include "rgc/snapshot.hpp"

using namespace rgc;

namespace {

QuadScalar r(long a, long b = 1) { return QuadScalar(make_rational(a, b)); }

OracleConfig cfg(QuadScalar L, Rational p, std::uint64_t seed, bool idf = false) {
  OracleConfig c;
  c.L = std::move(L);
  c.p = std::move(p);
  c.seed = seed;
  c.idf_mode = idf;
  return c;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("unit threshold and symmetry") {
  GraphOracle o(cfg(r(7, 2), make_rational(1, 2), 5));
  VertexId a = o.insert(o.point(0));
  VertexId b = o.insert(o.point(r(3, 2)));
  CHECK(a == 0);
  CHECK_FALSE(o.adjacent(a, b));
  for (long k = 1; k < 40; ++k) {
    VertexId v = o.insert(o.point(r(k, 40)));
    CHECK(o.adjacent(a, v) == o.adjacent(v, a));
  }
  CHECK_THROWS_AS(o.adjacent(a, a), UsageError);
  CHECK_THROWS_AS(o.adjacent(a, 9999), UsageError);
}

TEST_CASE("p close to one connects every unit-distance pair") {
  Rational p(Integer("999999999"), Integer("1000000000"));
  GraphOracle o(cfg(3, p, 1));
  for (long k = 1; k < 120; ++k) o.insert(o.point(r(k, 40)));
  auto g = snapshot(o);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      CHECK(g.adjacent(i, j) == (circle_dist(g.positions()[i], g.positions()[j]) < QuadScalar(1)));
}

TEST_CASE("adjacency ignores insertion order") {
  std::vector<QuadScalar> xs;
  for (long k = 0; k < 60; ++k) xs.push_back(r(k * 7 % 60, 20));
  GraphOracle a(cfg(3, make_rational(1, 2), 99)), b(cfg(3, make_rational(1, 2), 99));
  std::vector<VertexId> ia, ib(xs.size());
  for (const auto& x : xs) ia.push_back(a.insert(a.point(x)));
  for (std::size_t k = xs.size(); k-- > 0;) ib[k] = b.insert(b.point(xs[k]));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (ia[i] != ia[j]) CHECK(a.adjacent(ia[i], ia[j]) == b.adjacent(ib[i], ib[j]));
}

TEST_CASE("edge density matches p") {
  GraphOracle o(cfg(r(7, 2), make_rational(3, 10), 2024));
  for (long k = 1; k < 700; ++k) o.insert(o.point(r(k, 200)));
  auto g = snapshot(o);
  std::size_t pairs = 0, edges = 0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (circle_dist(g.positions()[i], g.positions()[j]) < QuadScalar(1)) {
        ++pairs;
        edges += g.adjacent(i, j);
      }
  REQUIRE(pairs >= 10000);
  double mean = 0.3 * pairs, sd = std::sqrt(pairs * 0.3 * 0.7);
  CHECK(std::fabs(edges - mean) < 3 * sd);
}

TEST_CASE("sampling inside arcs") {
  GraphOracle o(cfg(3, make_rational(1, 2), 7));
  Arc arc = open_arc(o.point(0), o.point(r(1, 2)));
  VertexId a = o.sample_vertex_in_arc(arc, 1);
  VertexId b = o.sample_vertex_in_arc(arc, 2);
  CHECK(arc.contains(o.position(a)));
  CHECK(arc.contains(o.position(b)));
  CHECK_FALSE(o.position(a) == o.position(b));
  Arc wrap = open_arc(o.point(r(5, 2)), o.point(r(1, 10)));
  for (std::uint64_t s = 10; s < 200; ++s) CHECK(wrap.contains(o.position(o.sample_vertex_in_arc(wrap, s))));
  Arc tiny = open_arc(o.point(r(1, 3)), o.point(r(1, 3) + r(1, 1000000000)));
  CHECK(tiny.contains(o.position(o.sample_vertex_in_arc(tiny, 0))));
  CHECK_THROWS_AS(o.sample_vertex_in_arc(open_arc(o.point(1), o.point(1)), 0), UsageError);
}

TEST_CASE("irrational offset keeps coordinates irrational") {
  OracleConfig c = cfg(QuadScalar(2) + QuadScalar::sqrt2(), make_rational(1, 2), 7);
  c.irrational_offset = true;
  GraphOracle o(c);
  Arc arc = open_arc(o.point(0), o.point(1));
  for (std::uint64_t s = 0; s < 50; ++s) {
    VertexId v = o.sample_vertex_in_arc(arc, s);
    CHECK_FALSE(o.position(v).pos().is_rational());
    CHECK(arc.contains(o.position(v)));
  }
}

TEST_CASE("integer-distance-free sampling") {
  GraphOracle o(cfg(r(5, 2), make_rational(1, 2), 3, true));
  Arc arc = open_arc(o.point(0), o.point(r(49, 20)));
  for (std::uint64_t s = 0; s < 1000; ++s) {
    VertexId v = o.sample_vertex_in_arc(arc, s);
    CHECK_FALSE(qr_decompose(o.position(v), 2).r.is_zero());
  }
  std::vector<CirclePoint> pts;
  for (VertexId v : o.pool()) pts.push_back(o.position(v));
  CHECK(is_integer_distance_free(pts, 2));
  CHECK_THROWS_AS(o.insert(o.point(r(1, 2))), UsageError);
}

TEST_CASE("witness trial counts follow the geometric law") {
  GraphOracle o(cfg(3, make_rational(1, 2), 11));
  VertexId s = o.insert(o.point(r(3, 2)));
  VertexId a1 = o.insert(o.point(r(16, 10)));
  VertexId a2 = o.insert(o.point(r(14, 10)));
  VertexId b1 = o.insert(o.point(r(17, 10)));
  std::vector<VertexId> A{a1, a2}, B{b1};
  double total = 0;
  const int runs = 1000;
  for (int i = 0; i < runs; ++i) {
    WitnessResult w = o.gec_witness(s, A, B, r(1, 2));
    CHECK(o.adjacent(w.id, a1));
    CHECK(o.adjacent(w.id, a2));
    CHECK_FALSE(o.adjacent(w.id, b1));
    CHECK(circle_dist(o.position(w.id), o.position(s)) < r(1, 2));
    total += static_cast<double>(w.trials);
  }
  double sd = std::sqrt(56.0 / runs);
  CHECK(std::fabs(total / runs - 8.0) < 3 * sd);
  std::vector<VertexId> none;
  CHECK_NOTHROW(o.gec_witness(s, none, none, r(1, 10)));
  CHECK_THROWS_AS(o.gec_witness(s, A, A, r(1, 10)), UsageError);
}

TEST_CASE("exhausted budgets are reported") {
  GraphOracle o(cfg(3, make_rational(1, 2), 11));
  std::vector<VertexId> A;
  for (long k = 1; k <= 40; ++k) A.push_back(o.insert(o.point(r(k, 100))));
  CHECK_THROWS_AS(o.gec_witness(0, A, {}, r(1, 10), 50), BudgetExhausted);
}

TEST_CASE("common neighbours") {
  GraphOracle o(cfg(3, make_rational(1, 2), 4));
  std::vector<VertexId> one{0};
  CHECK(o.common_neighbor(one).witness.has_value());
  std::vector<VertexId> U{0, o.insert(o.point(r(9, 10))), o.insert(o.point(r(1, 2)))};
  auto res = o.common_neighbor(U);
  REQUIRE(res.witness.has_value());
  for (VertexId u : U) CHECK(o.adjacent(*res.witness, u));
  GraphOracle f(cfg(4, make_rational(1, 2), 4));
  std::vector<VertexId> far{0, f.insert(f.point(2))};
  auto none = f.common_neighbor(far);
  CHECK(none.impossible);
  CHECK_FALSE(none.witness.has_value());
}

TEST_CASE("snapshots") {
  GraphOracle o(cfg(3, make_rational(1, 2), 8));
  auto single = snapshot(o);
  CHECK(single.size() == 1);
  CHECK(single.edge_count() == 0);
  for (long k = 1; k < 32; ++k) o.insert(o.point(r(3 * k, 32)));
  auto g1 = snapshot(o), g2 = snapshot(o);
  CHECK(g1.to_json().dump() == g2.to_json().dump());
  CHECK(g1.to_dot() == g2.to_dot());
  CHECK(g1.edge_count() > 0);
  for (std::size_t i = 0; i < g1.size(); ++i)
    for (std::size_t j : g1.neighbours(i)) {
      CHECK(circle_dist(g1.positions()[i], g1.positions()[j]) < QuadScalar(1));
      CHECK(g1.adjacent(j, i));
      CHECK(i != j);
    }
}

TEST_CASE("graph distance") {
  GraphOracle o(cfg(6, make_rational(1, 2), 21));
  VertexId u = 0;
  VertexId v = o.insert(o.point(r(5, 2)));
  o.densify(r(1, 4));
  o.realize_geodesic(u, v);
  auto g = snapshot(o);
  CHECK(graph_distance(g, u, u) == 0);
  CHECK(graph_distance(g, u, v) == 3);
  for (std::size_t j : g.neighbours(0)) CHECK(graph_distance(g, u, g.ids()[j]) == 1);
}

TEST_CASE("densify closes gaps") {
  GraphOracle o(cfg(r(5, 2), make_rational(1, 2), 6, true));
  o.densify(r(1, 4));
  std::vector<QuadScalar> xs;
  for (VertexId v : o.pool()) xs.push_back(o.position(v).pos());
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) CHECK(xs[i + 1] - xs[i] < r(1, 4));
  CHECK(xs.front() + r(5, 2) - xs.back() < r(1, 4));
}

}
