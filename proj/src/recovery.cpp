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

#include "rgc/recovery.hpp"

#include <algorithm>

namespace rgc {

namespace {

std::pair<VertexId, VertexId> key(VertexId a, VertexId b) { return std::minmax(a, b); }

std::vector<VertexId> with(std::span<const VertexId> U, VertexId w) {
  std::vector<VertexId> out(U.begin(), U.end());
  out.push_back(w);
  return out;
}


}  // namespace

SmallResult is_small(GraphOracle& o, std::span<const VertexId> U, std::uint64_t budget) {
  if (U.empty()) throw UsageError("is_small needs a nonempty set");
  SmallResult r;
  r.budget = budget ? budget : o.default_budget(U.size(), 0);
  CommonNeighborResult c = o.common_neighbor(U, r.budget);
  r.small = c.witness.has_value();
  r.certified_large = c.impossible;
  r.witness = c.witness;
  r.trials = c.trials;
  return r;
}

std::vector<VertexId> c_set(GraphOracle& o, std::span<const VertexId> U,
                            std::span<const VertexId> candidates) {
  std::vector<VertexId> out;
  for (VertexId w : candidates) {
    if (std::find(U.begin(), U.end(), w) != U.end() || is_small(o, with(U, w)).small)
      out.push_back(w);
  }
  return out;
}

ArcRecovery::ArcRecovery(GraphOracle& o)
    : o_(o), narrow_(o.circumference() < QuadScalar(3)), delta_(o.circumference() - QuadScalar(2)) {}

bool ArcRecovery::certified_large(std::span<const VertexId> U) const {
  return o_.centre_region(U).is_empty();
}

void ArcRecovery::require_small(std::span<const VertexId> U) {
  ++stats_.small_queries;
  SmallResult r = is_small(o_, U);
  stats_.witness_trials += r.trials;
  if (r.small) return;
  if (r.certified_large) throw InvariantViolation("expected a small set, found a large one");
  throw BudgetExhausted("common neighbour not found", r.budget);
}

const ArcRecovery::WideContext& ArcRecovery::wide_context(VertexId a, VertexId b) {
  auto k = key(a, b);
  if (auto it = wide_.find(k); it != wide_.end()) return it->second;
  if (!o_.adjacent(a, b)) throw UsageError("arc recovery needs adjacent endpoints");
  ++stats_.contexts;
  a = k.first;
  b = k.second;
  const CirclePoint& pa = o_.position(a);
  const CirclePoint& pb = o_.position(b);
  // Extend (a, b) to a path (x, a, b, y) whose vertex set is large: x just
  // inside unit distance behind a, y just inside unit distance beyond b.
  QuadScalar l = circle_dist(pa, pb);
  QuadScalar back = QuadScalar(short_direction(pa, pb)) * (QuadScalar(1) - qs_mul_rat(l, Rational(1, 4)));
  QuadScalar eps = qs_mul_rat(l, Rational(1, 8));
  VertexId ea[] = {a}, eb[] = {b};
  WitnessResult x = o_.gec_witness_at(pa.shifted(-back), ea, {}, eps, 0, Tier::Scratch);
  WitnessResult y = o_.gec_witness_at(pb.shifted(back), eb, {}, eps, 0, Tier::Scratch);
  stats_.witness_trials += x.trials + y.trials;
  std::vector<VertexId> all{x.id, a, b, y.id};
  if (!certified_large(all)) throw InvariantViolation("extended path is not large");
  WideContext ctx{{x.id, a, b}, {a, b, y.id}, ArcSet(o_.circumference()), ArcSet(o_.circumference())};
  ctx.R1 = o_.smallness_region(ctx.U1);
  ctx.R2 = o_.smallness_region(ctx.U2);
  return wide_.emplace(k, std::move(ctx)).first->second;
}

// w in W(U) = { w : C(U) = C(U + w) }. A separating vertex z with U + z
// small and U + w + z large proves w is outside.
bool ArcRecovery::w_test(std::span<const VertexId> U, const ArcSet& R, VertexId w) {
  std::vector<VertexId> Uw = with(U, w);
  ArcSet F = o_.centre_region(Uw);
  if (F.is_empty()) return false;
  require_small(Uw);
  ArcSet D = R.intersect(F.expand(QuadScalar(1)).complement());
  if (D.is_empty()) return true;
  VertexId z = o_.materialize_in(D, Tier::Scratch);
  require_small(with(U, z));
  if (!certified_large(with(Uw, z))) throw InvariantViolation("separator fails to separate");
  return false;
}

bool ArcRecovery::member_wide(VertexId a, VertexId b, VertexId w) {
  const WideContext& ctx = wide_context(a, b);
  return w_test(ctx.U1, ctx.R1, w) && w_test(ctx.U2, ctx.R2, w);
}

bool ArcRecovery::delta_indicator(VertexId u, VertexId v) {
  if (!narrow_) throw UsageError("the delta indicator needs 2 < L < 3");
  if (u == v) return true;
  auto k = key(u, v);
  if (auto it = indicator_.find(k); it != indicator_.end()) return it->second;
  ++stats_.indicator_queries;
  const CirclePoint& pu = o_.position(u);
  const CirclePoint& pv = o_.position(v);
  QuadScalar d = circle_dist(pu, pv);
  if (!(d < delta_)) {
    // A small U with U + u and U + v large forces ||u - v|| < delta.
    indicator_.emplace(k, false);
    return false;
  }
  // Small U inside the arc V of length 2 - eps avoiding v, dense enough
  // that U + u and U + v leave no gap longer than delta.
  QuadScalar eps = qs_mul_rat(delta_ - d, Rational(1, 4));
  QuadScalar eta = qs_mul_rat(eps, Rational(1, 2));
  QuadScalar len = QuadScalar(2) - eps;
  QuadScalar start = short_direction(pv, pu) > 0 ? pv.pos() + delta_ - eps : pv.pos() + eps + eps;
  QuadScalar span = len - eta - eta;
  QuadScalar spacing = qs_mul_rat(delta_, Rational(9, 10));
  std::int64_t m = std::max<std::int64_t>(1, qs_floor_i64(span / spacing) + 1);
  QuadScalar jitter = qs_mul_rat(eta, Rational(1, 4));
  std::vector<VertexId> U;
  for (std::int64_t j = 0; j <= m; ++j) {
    QuadScalar t = start + eta + qs_mul_rat(span, Rational(j) / Rational(m));
    Arc arc = open_arc(o_.point(t - jitter), o_.point(t + jitter));
    U.push_back(o_.sample_vertex_in_arc(arc, o_.next_stream(), Tier::Scratch));
  }
  if (!certified_large(with(U, u)) || !certified_large(with(U, v)))
    throw InvariantViolation("indicator set leaves a gap");
  require_small(U);
  indicator_.emplace(k, true);
  return true;
}

// A_{a,b} for ||a - b|| < delta: the intersection of all (v - delta,
// v + delta) containing a and b.
bool ArcRecovery::member_short(VertexId a, VertexId b, VertexId w) {
  if (w == a || w == b) return true;
  if (!delta_indicator(a, w) || !delta_indicator(b, w)) return false;
  ArcSet D = ArcSet::ball(o_.position(a), delta_)
                 .intersect(ArcSet::ball(o_.position(b), delta_))
                 .intersect(ArcSet::ball(o_.position(w), delta_).complement());
  if (D.is_empty()) return true;
  VertexId v = o_.materialize_in(D, Tier::Scratch);
  if (delta_indicator(v, a) && delta_indicator(v, b) && !delta_indicator(v, w)) return false;
  throw InvariantViolation("separating vertex does not separate");
}

const std::vector<VertexId>& ArcRecovery::chain(VertexId a, VertexId b) {
  auto k = key(a, b);
  if (auto it = chains_.find(k); it != chains_.end()) return it->second;
  if (!o_.adjacent(a, b)) throw UsageError("arc recovery needs adjacent endpoints");
  ++stats_.contexts;
  a = k.first;
  b = k.second;
  const CirclePoint& pa = o_.position(a);
  const CirclePoint& pb = o_.position(b);
  // n hops of length ||a - b|| / n < delta, kept adjacent.
  std::int64_t n = qs_floor_i64(QuadScalar(1) / delta_);
  if (QuadScalar(n) * delta_ < QuadScalar(1)) ++n;
  QuadScalar step = qs_mul_rat(circle_dist(pa, pb), Rational(1) / Rational(n));
  QuadScalar eps = qs_mul_rat(min(step, delta_ - step), Rational(1, 4));
  QuadScalar dir(short_direction(pa, pb));
  std::vector<VertexId> c{a};
  for (std::int64_t i = 1; i < n; ++i) {
    std::vector<VertexId> A{c.back()};
    if (i + 1 == n) A.push_back(b);
    WitnessResult w =
        o_.gec_witness_at(pa.shifted(dir * qs_mul_rat(step, Rational(i))), A, {}, eps, 0, Tier::Scratch);
    stats_.witness_trials += w.trials;
    c.push_back(w.id);
  }
  c.push_back(b);
  return chains_.emplace(k, std::move(c)).first->second;
}

bool ArcRecovery::member_narrow(VertexId a, VertexId b, VertexId w) {
  if (delta_indicator(a, b)) return member_short(a, b, w);
  const std::vector<VertexId>& c = chain(a, b);
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (member_short(c[i], c[i + 1], w)) return true;
  return false;
}

bool ArcRecovery::member(VertexId a, VertexId b, VertexId w) {
  if (w == a || w == b) return true;
  auto [lo, hi] = key(a, b);
  auto mk = std::make_tuple(lo, hi, w);
  if (auto it = members_.find(mk); it != members_.end()) return it->second;
  ++stats_.membership_queries;
  bool in = narrow_ ? member_narrow(a, b, w) : member_wide(a, b, w);
  members_.emplace(mk, in);
  return in;
}

std::vector<VertexId> ArcRecovery::recover_arc(VertexId a, VertexId b,
                                               std::span<const VertexId> candidates) {
  if (a == b || !o_.adjacent(a, b)) throw UsageError("arc recovery needs adjacent endpoints");
  std::vector<VertexId> out;
  for (VertexId w : candidates)
    if (member(a, b, w)) out.push_back(w);
  for (VertexId e : {a, b})
    if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  return out;
}

std::vector<VertexId> ArcRecovery::recover_arc(VertexId a, VertexId b) {
  std::vector<VertexId> pool = o_.pool();
  return recover_arc(a, b, pool);
}

bool ArcRecovery::cyclically_ordered(VertexId a, VertexId b, VertexId c) {
  if (a == b || b == c || a == c) throw UsageError("cyclic order needs three distinct vertices");
  return !member(b, c, a) && !member(a, b, c);
}

bool ArcRecovery::is_unidirectional(std::span<const VertexId> path) {
  if (path.size() < 2) return false;
  std::vector<VertexId> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!o_.adjacent(path[i], path[i + 1])) return false;
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (!cyclically_ordered(path[i - 1], path[i], path[i + 1])) return false;
  return true;
}

std::int64_t ArcRecovery::winding_number(std::span<const VertexId> path) {
  std::int64_t w = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) w += member(path[i], path[i + 1], path[0]);
  return w;
}

bool ArcRecovery::is_good(std::span<const VertexId> path) {
  if (path.size() < 3) return false;
  if (!is_unidirectional(path)) return false;
  return member(path[0], path[1], path.back());
}

std::vector<VertexId> recover_arc(GraphOracle& o, VertexId a, VertexId b) {
  ArcRecovery rec(o);
  return rec.recover_arc(a, b);
}

bool recover_delta_indicator(GraphOracle& o, VertexId u, VertexId v) {
  ArcRecovery rec(o);
  return rec.delta_indicator(u, v);
}

nlohmann::ordered_json to_json(const RecoveryStats& s) {
  return {{"membership_queries", s.membership_queries},
          {"indicator_queries", s.indicator_queries},
          {"small_queries", s.small_queries},
          {"witness_trials", s.witness_trials},
          {"contexts", s.contexts}};
}

}  // namespace rgc
