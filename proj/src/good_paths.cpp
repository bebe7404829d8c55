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

namespace {

QuadScalar frac(const QuadScalar& x) { return x - QuadScalar(Rational(qs_floor(x))); }

}  // namespace

UniPath build_good_path(ArcRecovery& rec, VertexId u, VertexId v, std::int64_t k) {
  GraphOracle& o = rec.oracle();
  if (k < 1) throw UsageError("winding number must be at least 1");
  const CirclePoint& pu = o.position(u);
  const CirclePoint& pv = o.position(v);
  QuadScalar l = circle_dist(pu, pv);
  if (u == v || !(l < QuadScalar(1))) throw UsageError("good paths need distinct endpoints at distance < 1");
  QuadScalar total = l + qs_mul_rat(o.circumference(), Rational(k));
  std::int64_t n = qs_floor_i64(total) + 1;
  // First hop t in (max(l, frac(total)), 1) overshoots v; the rest are evenly
  // spaced with gap < 1.
  QuadScalar t = qs_mul_rat(max(l, frac(total)) + QuadScalar(1), Rational(1, 2));
  QuadScalar gap = qs_mul_rat(total - t, Rational(1) / Rational(n - 1));
  QuadScalar eps = qs_mul_rat(QuadScalar(1) - max(t, gap), Rational(1, 4));
  QuadScalar dir(short_direction(pu, pv));
  UniPath path{{u}};
  for (std::int64_t i = 1; i < n; ++i) {
    QuadScalar offset = t + qs_mul_rat(gap, Rational(i - 1));
    std::vector<VertexId> A{path.vertices.back()};
    if (i + 1 == n) A.push_back(v);
    path.vertices.push_back(o.gec_witness_at(pu.shifted(dir * offset), A, {}, eps).id);
  }
  path.vertices.push_back(v);
  if (!rec.is_good(path.vertices)) throw InvariantViolation("constructed path is not good");
  if (rec.winding_number(path.vertices) != k)
    throw InvariantViolation("constructed path has the wrong winding number");
  return path;
}

std::vector<std::int64_t> recover_distance_sequence(ArcRecovery& rec, VertexId u, VertexId v,
                                                    std::int64_t K) {
  if (!rec.oracle().adjacent(u, v)) throw UsageError("distance sequences need adjacent vertices");
  std::vector<std::int64_t> out;
  for (std::int64_t k = 1; k <= K; ++k)
    out.push_back(static_cast<std::int64_t>(build_good_path(rec, u, v, k).length()) - 1);
  return out;
}

IrrationalDistance recover_distance_irrational(ArcRecovery& rec, VertexId u, VertexId v,
                                               std::int64_t K,
                                               std::span<const std::int64_t> checkpoints) {
  GraphOracle& o = rec.oracle();
  const QuadScalar& L = o.circumference();
  if (L.is_rational()) throw UsageError("interval recovery needs an irrational circumference");
  if (!o.adjacent(u, v)) throw UsageError("distance recovery needs adjacent vertices");
  IrrationalDistance res{{QuadScalar(0), QuadScalar(1)}, {}, {}};
  DistanceInterval& I = res.interval;
  for (std::int64_t k = 1; k <= K; ++k) {
    QuadScalar kL = qs_mul_rat(L, Rational(k));
    // x + kL ranges over [lo + kL, hi + kL); its floor is already known
    // unless an integer falls strictly inside.
    Integer f = qs_floor(I.lo + kL);
    if (QuadScalar(Rational(f + 1)) < I.hi + kL) {
      std::int64_t lk = static_cast<std::int64_t>(build_good_path(rec, u, v, k).length()) - 1;
      res.constraints.emplace_back(k, lk);
      I.lo = max(I.lo, QuadScalar(lk) - kL);
      I.hi = min(I.hi, QuadScalar(lk + 1) - kL);
      if (!(I.lo < I.hi)) throw InvariantViolation("distance constraints are inconsistent");
    }
    if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end())
      res.checkpoints.emplace_back(k, I);
  }
  return res;
}

DistanceInterval recover_distance_paths(ArcRecovery& rec, std::span<const std::vector<VertexId>> paths,
                                        std::int64_t K) {
  if (paths.empty()) throw UsageError("no paths given");
  std::optional<DistanceInterval> best;
  for (const auto& p : paths) {
    if (p.size() < 2) throw UsageError("a path needs two vertices");
    DistanceInterval sum{QuadScalar(0), QuadScalar(0)};
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      DistanceInterval d = recover_distance_irrational(rec, p[i], p[i + 1], K).interval;
      sum.lo += d.lo;
      sum.hi += d.hi;
    }
    if (!best) {
      best = sum;
    } else {
      best->lo = min(best->lo, sum.lo);
      best->hi = min(best->hi, sum.hi);
    }
  }
  return *best;
}

nlohmann::ordered_json to_json(const DistanceInterval& d) {
  return {{"lo", encode(d.lo)}, {"hi", encode(d.hi)}, {"width_approx", d.width().approx()}};
}

}  // namespace rgc
