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

#include "rgc/circle.hpp"

#include <algorithm>
#include <set>

namespace rgc {

namespace {

void require_same_circle(const CirclePoint& u, const CirclePoint& v) {
  if (u.circumference() != v.circumference())
    throw UsageError("points live on circles of different circumference");
}

}  // namespace

QuadScalar reduce_mod(const QuadScalar& x, const QuadScalar& L) {
  if (L.sign() <= 0) throw UsageError("circumference must be positive");
  if (x.sign() >= 0 && x < L) return x;
  Integer k = qs_floor(x / L);
  return x - L * QuadScalar(Rational(k));
}

CirclePoint::CirclePoint(QuadScalar x, QuadScalar L) : pos_(reduce_mod(x, L)), L_(std::move(L)) {}

QuadScalar forward_length(const CirclePoint& from, const CirclePoint& to) {
  require_same_circle(from, to);
  QuadScalar d = to.pos() - from.pos();
  if (d.sign() < 0) d += from.circumference();
  return d;
}

QuadScalar circle_dist(const CirclePoint& u, const CirclePoint& v) {
  QuadScalar d = forward_length(u, v);
  QuadScalar back = u.circumference() - d;
  if (d.is_zero()) return d;
  return min(d, back);
}

int short_direction(const CirclePoint& a, const CirclePoint& b) {
  QuadScalar d = forward_length(a, b);
  if (d.is_zero()) return 0;
  QuadScalar twice = d + d;
  auto c = twice <=> a.circumference();
  if (c == 0) throw UsageError("antipodal points have no shorter arc");
  return c < 0 ? +1 : -1;
}

bool Arc::contains(const CirclePoint& p) const {
  QuadScalar len = length();
  QuadScalar t = forward_length(start, p);
  if (t.is_zero()) return closed_start || (closed_end && len.is_zero());
  if (t == len) return closed_end;
  return t < len;
}

Arc open_arc(const CirclePoint& start, const CirclePoint& end) { return Arc{start, end, false, false}; }

Arc short_arc(const CirclePoint& a, const CirclePoint& b) {
  int dir = short_direction(a, b);
  if (dir >= 0) return Arc{a, b, true, true};
  return Arc{b, a, true, true};
}

std::vector<std::size_t> short_arc_indices(const CirclePoint& a, const CirclePoint& b,
                                           std::span<const CirclePoint> pool) {
  Arc arc = short_arc(a, b);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (arc.contains(pool[i])) out.push_back(i);
  return out;
}

std::vector<CirclePoint> short_arc_points(const CirclePoint& a, const CirclePoint& b,
                                          std::span<const CirclePoint> pool) {
  std::vector<CirclePoint> out;
  for (std::size_t i : short_arc_indices(a, b, pool)) out.push_back(pool[i]);
  return out;
}

bool cyclically_ordered(const CirclePoint& a, const CirclePoint& b, const CirclePoint& c) {
  if (a == b || b == c || a == c) throw UsageError("cyclic order needs three distinct points");
  // Two arcs sharing the endpoint b overlap beyond b exactly when they leave
  // b on the same side, i.e. when the moves a->b and b->c reverse direction.
  return short_direction(a, b) == short_direction(b, c);
}

std::pair<std::int64_t, std::int64_t> rational_parts(const QuadScalar& L) {
  if (!L.is_rational()) throw UsageError("circumference is irrational");
  const Rational& q = L.rational_part();
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p())
    throw UsageError("circumference numerator/denominator too large");
  return {q.get_num().get_si(), q.get_den().get_si()};
}

QrDecomposition qr_decompose(const CirclePoint& v, std::int64_t m) {
  auto [l, den] = rational_parts(v.circumference());
  if (m != den) throw UsageError("m must be the reduced denominator of L");
  (void)l;
  QuadScalar scaled = qs_mul_rat(v.pos(), Rational(m));
  std::int64_t q = qs_floor_i64(scaled);
  QuadScalar r = v.pos() - QuadScalar(make_rational(q, m));
  return {q, std::move(r)};
}

bool is_integer_distance_free(std::span<const CirclePoint> points, std::int64_t m) {
  // L is a multiple of 1/m, so ||u - v|| is a multiple of 1/m iff u - v is,
  // iff the residues r_u and r_v coincide.
  std::set<QuadScalar> residues;
  for (const auto& p : points) {
    auto [q, r] = qr_decompose(p, m);
    (void)q;
    if (!residues.insert(r).second) return false;
  }
  return true;
}

// -- ArcSet -----------------------------------------------------------------

ArcSet ArcSet::full(const QuadScalar& L) {
  ArcSet s(L);
  s.pieces_.emplace_back(QuadScalar(0), L);
  return s;
}

bool ArcSet::is_full() const {
  return pieces_.size() == 1 && pieces_[0].first.is_zero() && pieces_[0].second == L_;
}

ArcSet ArcSet::arc(const QuadScalar& L, const QuadScalar& start, const QuadScalar& len) {
  if (len.sign() <= 0) return empty(L);
  if (len >= L) return full(L);
  ArcSet s(L);
  QuadScalar lo = reduce_mod(start, L);
  QuadScalar hi = lo + len;
  if (hi <= L) {
    s.add_piece(lo, hi);
  } else {
    s.add_piece(lo, L);
    s.add_piece(QuadScalar(0), hi - L);
  }
  s.normalize();
  return s;
}

ArcSet ArcSet::ball(const CirclePoint& c, const QuadScalar& r) {
  return arc(c.circumference(), c.pos() - r, r + r);
}

void ArcSet::add_piece(QuadScalar lo, QuadScalar hi) {
  if (lo < hi) pieces_.emplace_back(std::move(lo), std::move(hi));
}

void ArcSet::normalize() {
  std::sort(pieces_.begin(), pieces_.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<QuadScalar, QuadScalar>> merged;
  for (auto& p : pieces_) {
    // Touching open intervals differ from their union by one point only.
    if (!merged.empty() && p.first <= merged.back().second) {
      if (merged.back().second < p.second) merged.back().second = p.second;
    } else {
      merged.push_back(std::move(p));
    }
  }
  pieces_ = std::move(merged);
}

bool ArcSet::contains(const CirclePoint& p) const {
  for (const auto& [lo, hi] : pieces_)
    if (lo < p.pos() && p.pos() < hi) return true;
  return false;
}

ArcSet ArcSet::intersect(const ArcSet& o) const {
  ArcSet out(L_);
  for (const auto& [a, b] : pieces_)
    for (const auto& [c, d] : o.pieces_) out.add_piece(max(a, c), min(b, d));
  out.normalize();
  return out;
}

ArcSet ArcSet::unite(const ArcSet& o) const {
  ArcSet out(*this);
  for (const auto& p : o.pieces_) out.pieces_.push_back(p);
  out.normalize();
  return out;
}

ArcSet ArcSet::complement() const {
  ArcSet out(L_);
  QuadScalar cursor(0);
  for (const auto& [lo, hi] : pieces_) {
    out.add_piece(cursor, lo);
    cursor = hi;
  }
  out.add_piece(cursor, L_);
  out.normalize();
  return out;
}

ArcSet ArcSet::expand(const QuadScalar& r) const {
  ArcSet out(L_);
  for (const auto& [lo, hi] : pieces_) out = out.unite(arc(L_, lo - r, hi - lo + r + r));
  return out;
}

std::vector<std::pair<QuadScalar, QuadScalar>> ArcSet::arcs() const {
  std::vector<std::pair<QuadScalar, QuadScalar>> out;
  for (const auto& [lo, hi] : pieces_) out.emplace_back(lo, hi - lo);
  if (out.size() >= 2 && pieces_.front().first.is_zero() && pieces_.back().second == L_) {
    // Glue the piece ending at L onto the piece starting at 0.
    out.back().second += out.front().second;
    out.erase(out.begin());
  }
  return out;
}

std::pair<QuadScalar, QuadScalar> ArcSet::longest() const {
  auto all = arcs();
  if (all.empty()) throw UsageError("longest piece of an empty arc set");
  std::size_t best = 0;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[best].second < all[i].second) best = i;
  return all[best];
}

}  // namespace rgc
