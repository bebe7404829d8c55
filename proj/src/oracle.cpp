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

#include "rgc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rgc {

namespace {

QuadScalar pow2(int k) {
  Rational r(1);
  mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(k));
  return QuadScalar(r);
}

bool contains(std::span<const VertexId> s, VertexId v) {
  return std::find(s.begin(), s.end(), v) != s.end();
}

// An open arc for a region piece; a full circle is cut down to a half.
Arc piece_arc(const QuadScalar& L, const QuadScalar& start, QuadScalar len) {
  if (len >= L) len = qs_mul_rat(L, Rational(1, 2));
  return open_arc(CirclePoint(start, L), CirclePoint(start + len, L));
}

}  // namespace

std::uint64_t edge_hash(std::uint64_t seed, const std::string& enc_u, const std::string& enc_v) {
  const std::string& lo = enc_u < enc_v ? enc_u : enc_v;
  const std::string& hi = enc_u < enc_v ? enc_v : enc_u;
  std::string buf;
  buf.reserve(8 + lo.size() + hi.size());
  for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((seed >> (8 * i)) & 0xff));
  buf += lo;
  buf += hi;
  return siphash24(seed, 0, buf);
}

GraphOracle::GraphOracle(OracleConfig config) : config_(std::move(config)) {
  if (!(config_.L > QuadScalar(2))) throw UsageError("circumference must exceed 2");
  if (config_.p <= 0 || config_.p >= 1) throw UsageError("p must lie in (0, 1)");
  if (config_.idf_mode) m_ = rational_parts(config_.L).second;
  L_approx_ = config_.L.approx();
  // hash < p * 2^64  <=>  hash < ceil(num * 2^64 / den).
  Integer scaled = config_.p.get_num();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 64);
  Integer t;
  mpz_cdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), config_.p.get_den_mpz_t());
  Integer hi = t >> 64;
  Integer lo = t - (hi << 64);
  threshold_ = (static_cast<unsigned __int128>(hi.get_ui()) << 64) |
               static_cast<unsigned __int128>(mpz_get_ui(lo.get_mpz_t())) ;
  if (sizeof(unsigned long) < 8) throw UsageError("64-bit platform required");
  insert(point(QuadScalar(0)), Tier::Pool);
}

const GraphOracle::Vertex& GraphOracle::at(VertexId v) const {
  if (v >= vertices_.size()) throw UsageError("unknown vertex id " + std::to_string(v));
  return vertices_[v];
}

std::optional<VertexId> GraphOracle::find(const CirclePoint& p) const {
  auto it = by_encoding_.find(encode(p.pos()));
  if (it == by_encoding_.end()) return std::nullopt;
  return it->second;
}

bool GraphOracle::idf_compatible(const CirclePoint& p) const {
  if (!config_.idf_mode) return true;
  return !residues_.contains(qr_decompose(p, m_).r);
}

VertexId GraphOracle::insert(const CirclePoint& p, Tier tier) {
  if (p.circumference() != config_.L) throw UsageError("point lives on a different circle");
  std::string enc = encode(p.pos());
  if (auto it = by_encoding_.find(enc); it != by_encoding_.end()) {
    Vertex& v = vertices_[it->second];
    if (tier == Tier::Pool && v.tier == Tier::Scratch) {
      v.tier = Tier::Pool;
      pool_.push_back(it->second);
    }
    return it->second;
  }
  if (config_.idf_mode) {
    QuadScalar r = qr_decompose(p, m_).r;
    if (!residues_.insert(r).second)
      throw UsageError("inserting " + to_display(p.pos()) + " breaks integer-distance-freeness");
  }
  auto id = static_cast<VertexId>(vertices_.size());
  double a = p.pos().approx();
  vertices_.push_back(Vertex{p, enc, a, p.pos().approx_error(), tier});
  by_encoding_.emplace(std::move(enc), id);
  index_.emplace(a, id);
  if (tier == Tier::Pool) pool_.push_back(id);
  return id;
}

bool GraphOracle::edge(const std::string& eu, const std::string& ev) const {
  return static_cast<unsigned __int128>(edge_hash(config_.seed, eu, ev)) < threshold_;
}

int GraphOracle::unit_test(double au, double eu, double av, double ev) const {
  double d = std::fabs(au - av);
  double circ = std::min(d, L_approx_ - d);
  double tol = eu + ev + 2 * config_.L.approx_error() + 1e-9;
  if (circ < 1.0 - tol) return +1;
  if (circ > 1.0 + tol) return -1;
  return 0;
}

bool GraphOracle::within_unit_exact(const CirclePoint& x, const CirclePoint& y) const {
  return circle_dist(x, y) < QuadScalar(1);
}

bool GraphOracle::adjacent_impl(const CirclePoint& pu, const std::string& eu, double au,
                                double erru, const Vertex& v) const {
  if (eu == v.enc) return false;
  int t = unit_test(au, erru, v.approx, v.err);
  if (t < 0) return false;
  if (t == 0 && !within_unit_exact(pu, v.pos)) return false;
  return edge(eu, v.enc);
}

bool GraphOracle::adjacent(VertexId u, VertexId v) const {
  if (u == v) throw UsageError("adjacency query on a single vertex");
  const Vertex& x = at(u);
  return adjacent_impl(x.pos, x.enc, x.approx, x.err, at(v));
}

bool GraphOracle::adjacent(const Candidate& c, VertexId v) const {
  return adjacent_impl(c.pos, c.enc, c.approx, c.pos.pos().approx_error(), at(v));
}

bool GraphOracle::adjacent(const Candidate& c, const Candidate& d) const {
  if (c.enc == d.enc) return false;
  int t = unit_test(c.approx, c.pos.pos().approx_error(), d.approx, d.pos.pos().approx_error());
  if (t < 0) return false;
  if (t == 0 && !within_unit_exact(c.pos, d.pos)) return false;
  return edge(c.enc, d.enc);
}

bool GraphOracle::within_unit(VertexId u, VertexId v) const {
  const Vertex& x = at(u);
  const Vertex& y = at(v);
  int t = unit_test(x.approx, x.err, y.approx, y.err);
  if (t != 0) return t > 0;
  return within_unit_exact(x.pos, y.pos);
}

Candidate GraphOracle::make_candidate(CirclePoint p) const {
  std::string enc = encode(p.pos());
  double a = p.pos().approx();
  return Candidate{std::move(p), std::move(enc), a};
}

Candidate GraphOracle::propose_in_arc(const Arc& arc, Stream& rng) const {
  QuadScalar len = arc.length();
  if (len.sign() <= 0) throw UsageError("cannot sample inside an empty arc");
  double la = len.approx();
  int k = la > 0 ? std::max(0, static_cast<int>(std::ceil(20.0 - std::log2(la)))) : 1100;
  QuadScalar scale = pow2(k);
  QuadScalar offset = config_.irrational_offset ? QuadScalar(0, Rational(1, 2)) : QuadScalar(0);
  QuadScalar lo = (arc.start.pos() - offset) * scale;
  QuadScalar hi = lo + len * scale;
  Integer jlo = qs_floor(lo) + 1;
  Integer jhi = qs_ceil(hi) - 1;
  Integer count = jhi - jlo + 1;
  if (count <= 0 || !count.fits_ulong_p()) throw InvariantViolation("bad sampling grid");
  const std::uint64_t n = count.get_ui();
  for (std::uint32_t attempt = 0; attempt < std::max<std::uint32_t>(1, config_.idf_retry_budget);
       ++attempt) {
    Integer j = jlo + Integer(static_cast<unsigned long>(rng.below(n)));
    QuadScalar x = offset + QuadScalar(Rational(j)) / scale;
    Candidate c = make_candidate(CirclePoint(x, config_.L));
    if (by_encoding_.contains(c.enc)) continue;
    if (!idf_compatible(c.pos)) continue;
    return c;
  }
  throw BudgetExhausted("no admissible point found inside arc", config_.idf_retry_budget);
}

VertexId GraphOracle::sample_vertex_in_arc(const Arc& arc, std::uint64_t rng_stream, Tier tier) {
  Stream rng(config_.seed, "arc-sampling", rng_stream);
  return materialize(propose_in_arc(arc, rng), tier);
}

std::uint64_t GraphOracle::default_budget(std::size_t adjacent_to, std::size_t non_adjacent_to) const {
  double p = config_.p.get_d();
  double log_prob = static_cast<double>(adjacent_to) * std::log(p) +
                    static_cast<double>(non_adjacent_to) * std::log1p(-p);
  double trials = 64.0 * std::exp(-log_prob) * config_.budget_scale;
  double cap = static_cast<double>(config_.max_trials);
  if (!(trials < cap)) return config_.max_trials;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(trials)));
}

std::optional<WitnessResult> GraphOracle::find_witness(const Arc& region, std::span<const VertexId> A,
                                                       std::span<const VertexId> B,
                                                       std::uint64_t budget, Tier tier) {
  Stream rng(config_.seed, "witness", next_stream());
  for (std::uint64_t t = 1; t <= budget; ++t) {
    Candidate c = propose_in_arc(region, rng);
    bool ok = std::all_of(A.begin(), A.end(), [&](VertexId a) { return adjacent(c, a); }) &&
              std::none_of(B.begin(), B.end(), [&](VertexId b) { return adjacent(c, b); });
    if (ok) return WitnessResult{materialize(c, tier), t};
  }
  return std::nullopt;
}

WitnessResult GraphOracle::gec_witness_at(const CirclePoint& centre, std::span<const VertexId> A,
                                          std::span<const VertexId> B, const QuadScalar& eps,
                                          std::uint64_t budget, Tier tier) {
  if (eps.sign() <= 0) throw UsageError("eps must be positive");
  for (VertexId a : A)
    if (contains(B, a)) throw UsageError("A and B must be disjoint");
  for (VertexId u : A)
    if (!(circle_dist(position(u), centre) + eps < QuadScalar(1)))
      throw UsageError("eps-ball around the centre leaves the unit ball of A");
  for (VertexId u : B)
    if (!(circle_dist(position(u), centre) < QuadScalar(1)))
      throw UsageError("B must lie in the open unit ball around the centre");
  if (budget == 0) budget = default_budget(A.size(), B.size());
  Arc region = open_arc(centre.shifted(-eps), centre.shifted(eps));
  auto found = find_witness(region, A, B, budget, tier);
  if (!found) throw BudgetExhausted("g.e.c. witness not found", budget);
  return *found;
}

WitnessResult GraphOracle::gec_witness(VertexId s, std::span<const VertexId> A,
                                       std::span<const VertexId> B, const QuadScalar& eps,
                                       std::uint64_t budget, Tier tier) {
  return gec_witness_at(position(s), A, B, eps, budget, tier);
}

std::vector<VertexId> GraphOracle::near(const CirclePoint& centre, double radius) const {
  std::vector<VertexId> out;
  double r = radius + 1e-9;
  if (2 * r >= L_approx_) {
    for (const auto& [key, id] : index_) out.push_back(id);
    return out;
  }
  double c = centre.pos().approx();
  auto take = [&](double lo, double hi) {
    for (auto it = index_.lower_bound(lo); it != index_.end() && it->first <= hi; ++it)
      out.push_back(it->second);
  };
  double lo = c - r, hi = c + r;
  if (lo < 0) {
    take(lo + L_approx_, L_approx_ + 1);
    take(-1, hi);
  } else if (hi > L_approx_) {
    take(lo, L_approx_ + 1);
    take(-1, hi - L_approx_);
  } else {
    take(lo, hi);
  }
  return out;
}

ArcSet GraphOracle::centre_region(std::span<const VertexId> U) const {
  ArcSet f = ArcSet::full(config_.L);
  for (VertexId u : U) {
    f = f.intersect(ArcSet::ball(position(u), QuadScalar(1)));
    if (f.is_empty()) break;
  }
  return f;
}

ArcSet GraphOracle::smallness_region(std::span<const VertexId> U) const {
  if (U.empty()) return ArcSet::full(config_.L);
  return centre_region(U).expand(QuadScalar(1));
}

CommonNeighborResult GraphOracle::common_neighbor(std::span<const VertexId> U, std::uint64_t budget) {
  if (U.empty()) throw UsageError("common neighbour of an empty set");
  CommonNeighborResult result;
  ArcSet region = centre_region(U);
  if (region.is_empty()) {
    result.impossible = true;
    return result;
  }
  // Existing vertices first; only those inside the region can qualify.
  constexpr std::size_t kScanLimit = 256;
  std::size_t scanned = 0;
  for (const auto& [start, len] : region.arcs()) {
    CirclePoint mid = point(start + qs_mul_rat(len, Rational(1, 2)));
    for (VertexId w : near(mid, len.approx() / 2)) {
      if (contains(U, w)) continue;
      if (++scanned > kScanLimit) break;
      if (std::all_of(U.begin(), U.end(), [&](VertexId u) { return adjacent(w, u); })) {
        result.witness = w;
        return result;
      }
    }
  }
  auto [start, len] = region.longest();
  Arc arc = piece_arc(config_.L, start, len);
  if (budget == 0) budget = default_budget(U.size(), 0);
  if (auto found = find_witness(arc, U, {}, budget, Tier::Scratch)) {
    result.witness = found->id;
    result.trials = found->trials;
  } else {
    result.trials = budget;
  }
  return result;
}

VertexId GraphOracle::materialize_in(const ArcSet& region, Tier tier) {
  auto [start, len] = region.longest();
  Stream rng(config_.seed, "materialize", next_stream());
  return materialize(propose_in_arc(piece_arc(config_.L, start, len), rng), tier);
}

void GraphOracle::densify(const QuadScalar& gap) {
  if (gap.sign() <= 0) throw UsageError("gap must be positive");
  Stream rng(config_.seed, "densify", next_stream());
  for (;;) {
    std::vector<QuadScalar> xs;
    for (VertexId v : pool_) xs.push_back(position(v).pos());
    std::sort(xs.begin(), xs.end());
    bool changed = false;
    std::vector<Candidate> fresh;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      QuadScalar a = xs[i];
      QuadScalar b = i + 1 < xs.size() ? xs[i + 1] : xs[0] + config_.L;
      QuadScalar len = b - a;
      if (len < gap) continue;
      QuadScalar third = qs_mul_rat(len, Rational(1, 3));
      Arc middle = open_arc(point(a + third), point(a + third + third));
      fresh.push_back(propose_in_arc(middle, rng));
      changed = true;
    }
    for (const auto& c : fresh)
      if (idf_compatible(c.pos)) materialize(c, Tier::Pool);
    if (!changed) return;
  }
}

std::vector<VertexId> GraphOracle::realize_geodesic(VertexId u, VertexId v) {
  const CirclePoint& pu = position(u);
  const CirclePoint& pv = position(v);
  QuadScalar d = circle_dist(pu, pv);
  std::vector<VertexId> added;
  if (d < QuadScalar(1)) {
    if (u == v || adjacent(u, v)) return added;
    CirclePoint mid = pu.shifted(qs_mul_rat(d, Rational(short_direction(pu, pv), 2)));
    VertexId both[] = {u, v};
    added.push_back(gec_witness_at(mid, both, {}, QuadScalar(Rational(1, 4))).id);
    return added;
  }
  std::int64_t hops = qs_floor_i64(d) + 1;
  int dir = short_direction(pu, pv);
  QuadScalar step = qs_mul_rat(d, Rational(dir) / Rational(hops));
  QuadScalar eps = qs_mul_rat(QuadScalar(1) - abs(step), Rational(1, 4));
  VertexId prev = u;
  for (std::int64_t i = 1; i < hops; ++i) {
    CirclePoint anchor = pu.shifted(qs_mul_rat(step, Rational(i)));
    std::vector<VertexId> A{prev};
    if (i + 1 == hops) A.push_back(v);
    prev = gec_witness_at(anchor, A, {}, eps).id;
    added.push_back(prev);
  }
  return added;
}

}  // namespace rgc
