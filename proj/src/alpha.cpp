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

#include "rgc/recovery.hpp"

namespace rgc {

AlphaEstimate estimate_alpha(GraphOracle& o, std::int64_t n) {
  if (n < 8) throw UsageError("alpha estimation needs n >= 8");
  const QuadScalar& L = o.circumference();
  AlphaEstimate est;
  est.n = n;
  const QuadScalar radius(Rational(1, n));
  // One vertex near each iL/n; windows are disjoint because L > 2.
  for (std::int64_t i = 0; i < n; ++i) {
    CirclePoint target = o.point(qs_mul_rat(L, Rational(i, n)));
    std::optional<VertexId> pick;
    for (VertexId v : o.near(target, radius.approx()))
      if (o.tier(v) == Tier::Pool && circle_dist(o.position(v), target) < radius && (!pick || v < *pick))
        pick = v;
    if (!pick)
      pick = o.sample_vertex_in_arc(open_arc(target.shifted(-radius), target.shifted(radius)),
                                    o.next_stream(), Tier::Scratch);
    est.U.push_back(*pick);
  }
  // The densest open arc of length 2, scanning arcs that start at a member.
  std::size_t best_start = 0;
  std::vector<VertexId> best_set;
  QuadScalar best_span;
  for (std::size_t j = 0; j < est.U.size(); ++j) {
    std::vector<VertexId> in;
    QuadScalar span(0);
    for (VertexId w : est.U) {
      QuadScalar f = forward_length(o.position(est.U[j]), o.position(w));
      if (f < QuadScalar(2)) {
        in.push_back(w);
        span = max(span, f);
      }
    }
    if (in.size() > best_set.size()) {
      best_set = std::move(in);
      best_start = j;
      best_span = span;
    }
  }
  CirclePoint centre = o.position(est.U[best_start]).shifted(qs_mul_rat(best_span, Rational(1, 2)));
  QuadScalar eps = qs_mul_rat(QuadScalar(1) - qs_mul_rat(best_span, Rational(1, 2)), Rational(1, 2));
  auto count = [&](VertexId v) {
    return static_cast<std::int64_t>(
        std::count_if(est.U.begin(), est.U.end(), [&](VertexId u) { return u != v && o.adjacent(u, v); }));
  };
  try {
    WitnessResult w = o.gec_witness_at(centre, best_set, {}, eps, 0, Tier::Scratch);
    est.trials = w.trials;
    est.best_vertex = w.id;
    est.best_count = count(w.id);
  } catch (const BudgetExhausted& e) {
    // Fall back to the best of a batch of plain candidates.
    est.trials = e.trials();
    Stream rng(o.seed(), "alpha-candidates", o.next_stream());
    Arc ball = open_arc(centre.shifted(-eps), centre.shifted(eps));
    for (int i = 0; i < 256; ++i) {
      VertexId v = o.materialize(o.propose_in_arc(ball, rng), Tier::Scratch);
      std::int64_t c = count(v);
      if (c > est.best_count) {
        est.best_count = c;
        est.best_vertex = v;
      }
    }
  }
  est.alpha = Rational(est.best_count, n);
  est.alpha.canonicalize();
  return est;
}

LEstimate recover_L(GraphOracle& o, std::int64_t n) {
  LEstimate e;
  e.alpha = estimate_alpha(o, n);
  if (e.alpha.alpha == 0) throw InvariantViolation("no candidate has a neighbour in U");
  Rational bar(3, n);
  bar.canonicalize();
  e.L_hat = 2 / e.alpha.alpha;
  e.lo = 2 / (e.alpha.alpha + bar);
  if (e.alpha.alpha > bar) e.hi = Rational(2 / (e.alpha.alpha - bar));
  return e;
}

nlohmann::ordered_json to_json(const AlphaEstimate& a) {
  return {{"n", a.n},
          {"best_count", a.best_count},
          {"alpha", encode_rational(a.alpha)},
          {"alpha_approx", a.alpha.get_d()},
          {"witness_trials", a.trials}};
}

nlohmann::ordered_json to_json(const LEstimate& e) {
  nlohmann::ordered_json j;
  j["alpha"] = to_json(e.alpha);
  j["L_hat"] = encode_rational(e.L_hat);
  j["L_hat_approx"] = e.L_hat.get_d();
  j["bracket_lo"] = encode_rational(e.lo);
  j["bracket_hi"] = e.hi ? nlohmann::ordered_json(encode_rational(*e.hi)) : nlohmann::ordered_json();
  return j;
}

}  // namespace rgc
