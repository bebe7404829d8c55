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
#include "rgc/isomorphism.hpp"

using namespace rgc;

namespace {

QuadScalar r(long a, long b = 1) { return QuadScalar(make_rational(a, b)); }

OracleConfig cfg(QuadScalar L, std::uint64_t seed, Rational p = Rational(1, 2), bool idf = true) {
  OracleConfig c;
  c.L = std::move(L);
  c.p = std::move(p);
  c.seed = seed;
  c.idf_mode = idf;
  return c;
}

std::vector<std::string> positions(const PartialIso& iso) {
  std::vector<std::string> out;
  for (auto [u, v] : iso.pairs()) {
    out.push_back(encode(iso.oracle(Side::Source).position(u).pos()));
    out.push_back(encode(iso.oracle(Side::Target).position(v).pos()));
  }
  return out;
}

}  // namespace

TEST_SUITE("isomorphism") {
  TEST_CASE("candidate interval from the origin-only state") {
    GraphOracle g(cfg(r(5, 2), 1)), h(cfg(r(5, 2), 2));
    PartialIso iso(g, h);
    VertexId s = g.insert(g.point(r(6, 5)));  // q = 2, r = 1/5
    CHECK(iso.qr(Side::Source, s).q == 2);
    Arc I = candidate_interval(iso, s);
    CHECK(I.start == h.point(r(1)));
    CHECK(I.end == h.point(r(3, 2)));
    CHECK_FALSE(I.closed_start);
    CHECK_FALSE(I.closed_end);
  }

  TEST_CASE("intervals nest as the map grows") {
    GraphOracle g(cfg(r(5, 2), 3)), h(cfg(r(5, 2), 4));
    PartialIso iso(g, h);
    VertexId s = g.insert(g.point(r(6, 5)));
    Arc I1 = candidate_interval(iso, s);
    VertexId t = forth_step(iso, s);
    CHECK(I1.contains(h.position(t)));
    VertexId s2 = g.insert(g.point(r(11, 10)));  // q = 2, r = 1/10 < 1/5
    Arc I2 = candidate_interval(iso, s2);
    CHECK(I2.start == I1.start);
    CHECK(I2.end == h.position(t));
    CHECK(I2.length() < I1.length());
  }

  TEST_CASE("origin-only run and small runs keep both invariants") {
    GraphOracle g(cfg(r(5, 2), 5)), h(cfg(r(5, 2), 6));
    PartialIso iso(g, h);
    BackAndForthResult none = run_back_and_forth(iso, {0, 0, true});
    CHECK(none.rounds_completed == 0);
    CHECK(iso.size() == 1);
    BackAndForthResult res = run_back_and_forth(iso, {6, 0, true});
    CHECK_FALSE(res.failure);
    CHECK(res.rounds_completed == 6);
    CHECK(iso.size() == 1 + 2 * 6);
    CHECK(iso.skips > 0);
    IsoCheck c = verify_partial_iso(iso);
    CHECK_MESSAGE(c.ok, c.failure);
    CHECK(c.adjacency_checks == iso.size() * (iso.size() - 1) / 2);
  }

  TEST_CASE("unequal edge probabilities") {
    GraphOracle g(cfg(r(7, 2), 7, Rational(3, 10))), h(cfg(r(7, 2), 8, Rational(7, 10)));
    PartialIso iso(g, h);
    BackAndForthResult res = run_back_and_forth(iso, {5, 0, true});
    CHECK_FALSE(res.failure);
    CHECK(verify_partial_iso(iso).ok);
  }

  TEST_CASE("skip rule is idempotent") {
    GraphOracle g(cfg(r(5, 2), 9)), h(cfg(r(5, 2), 10));
    PartialIso iso(g, h);
    VertexId s = g.insert(g.point(r(6, 5)));
    VertexId t = forth_step(iso, s);
    auto before = iso.pairs();
    CHECK(forth_step(iso, s) == t);
    CHECK(back_step(iso, t) == s);
    CHECK(iso.pairs() == before);
    CHECK(iso.skips == 2);
    CHECK(iso.steps == 1);
  }

  TEST_CASE("identical seeds reproduce the same map") {
    auto run = [](std::uint64_t a, std::uint64_t b) {
      GraphOracle g(cfg(r(5, 2), a)), h(cfg(r(5, 2), b));
      PartialIso iso(g, h);
      run_back_and_forth(iso, {5, 0, false});
      return positions(iso);
    };
    CHECK(run(11, 12) == run(11, 12));
    CHECK(run(11, 12) != run(11, 13));
  }

  TEST_CASE("exhausted budget reports the failing step") {
    GraphOracle g(cfg(r(5, 2), 13)), h(cfg(r(5, 2), 14));
    PartialIso iso(g, h);
    run_back_and_forth(iso, {4, 0, false});
    std::size_t size = iso.size();
    BackAndForthResult res = run_back_and_forth(iso, {50, 1, false});
    if (res.failure) {
      CHECK(res.failed_budget == 1);
      CHECK(verify_partial_iso(iso).ok);
    }
    CHECK(iso.size() >= size);
  }

  TEST_CASE("certificates round-trip and catch tampering") {
    GraphOracle g(cfg(r(5, 2), 15)), h(cfg(r(5, 2), 16));
    PartialIso iso(g, h);
    run_back_and_forth(iso, {6, 0, false});
    IsoCheck c = verify_partial_iso(iso);
    auto cert = certificate(iso, c);
    IsoCheck again = verify_certificate(cert);
    CHECK_MESSAGE(again.ok, again.failure);
    CHECK(again.adjacency_checks == c.adjacency_checks);
    CHECK(again.edges == c.edges);

    auto swapped = cert;
    std::swap(swapped["pairs"][2]["v"], swapped["pairs"][3]["v"]);
    CHECK_FALSE(verify_certificate(swapped).ok);

    auto moved = cert;
    moved["pairs"][0]["u"] = encode(r(1, 3));
    CHECK_FALSE(verify_certificate(moved).ok);

    auto broken = cert;
    broken.erase("L");
    CHECK_FALSE(verify_certificate(broken).ok);
  }

  TEST_CASE("class steps translate whole classes") {
    Rational p(19, 20);
    GraphOracle g(cfg(r(5, 2), 17, p, false)), h(cfg(r(5, 2), 18, p, false));
    ClassIso ci(g, h);
    CHECK(ci.iso().size() == 5);
    std::size_t before = ci.iso().size();
    VertexId s = sample_representative(ci, Side::Source);
    CHECK(ci.class_of(Side::Source, s).size() == 5);
    forth_step_classes(ci, s);
    CHECK(ci.iso().size() == before + 5);
    IsoCheck c = verify_partial_iso(ci.iso());
    CHECK_MESSAGE(c.ok, c.failure);
    IsoCheck t = verify_class_translation(ci);
    CHECK_MESSAGE(t.ok, t.failure);
    back_step_classes(ci, sample_representative(ci, Side::Target));
    CHECK(ci.iso().size() == before + 10);
    CHECK(verify_partial_iso(ci.iso()).ok);
    CHECK(verify_class_translation(ci).ok);
    CHECK(ci.classes().size() == 3);
  }

  TEST_CASE("class run stops cleanly when the budget runs out") {
    GraphOracle g(cfg(r(5, 2), 19, Rational(1, 2), false)), h(cfg(r(5, 2), 20, Rational(1, 2), false));
    ClassIso ci(g, h);
    BackAndForthResult res = run_class_back_and_forth(ci, {3, 1, false});
    REQUIRE(res.failure);
    CHECK(res.failed_budget == 1);
    CHECK(verify_partial_iso(ci.iso()).ok);
    CHECK(verify_class_translation(ci).ok);
  }

  TEST_CASE("class variant needs shift-closed rational sets") {
    GraphOracle g(cfg(r(5, 2), 1)), h(cfg(r(5, 2), 2));
    CHECK_THROWS_AS(ClassIso(g, h), UsageError);
  }

  TEST_CASE("non-isomorphism evidence on an irrational circle") {
    QuadScalar L = QuadScalar(2) + QuadScalar::sqrt2();
    SUBCASE("same graph, identity map") {
      GraphOracle g(cfg(L, 21, Rational(1, 2), false)), h(cfg(L, 21, Rational(1, 2), false));
      NonIsoReport rep = non_iso_evidence(g, h, 1, 200, true);
      CHECK(rep.total_pairs == 200);
      CHECK(rep.total_disagreements == 0);
    }
    SUBCASE("independent seeds disagree at rate one half") {
      GraphOracle g(cfg(L, 22, Rational(1, 2), false)), h(cfg(L, 23, Rational(1, 2), false));
      NonIsoReport rep = non_iso_evidence(g, h, 20, 50);
      CHECK(rep.expected_rate == doctest::Approx(0.5));
      double n = static_cast<double>(rep.total_pairs);
      double rate = rep.total_disagreements / n;
      CHECK(std::fabs(rate - 0.5) <= 3 * std::sqrt(0.25 / n));
      for (const auto& c : rep.candidates) CHECK(c.first_disagreement.has_value());
    }
    SUBCASE("rational circles are rejected") {
      GraphOracle g(cfg(r(5, 2), 1, Rational(1, 2), false)), h(cfg(r(5, 2), 2, Rational(1, 2), false));
      CHECK_THROWS_AS(non_iso_evidence(g, h, 1, 1), UsageError);
    }
  }
}
