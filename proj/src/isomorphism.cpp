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

#include "rgc/isomorphism.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rgc {

namespace {

Side other(Side s) { return s == Side::Source ? Side::Target : Side::Source; }

const char* name(Side s) { return s == Side::Source ? "source" : "target"; }

// Mapped pairs seen from `from`: (vertex on from-side, its partner).
std::vector<std::pair<VertexId, VertexId>> oriented(const PartialIso& iso, Side from) {
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(iso.size());
  for (auto [u, v] : iso.pairs()) out.emplace_back(from == Side::Source ? u : v, from == Side::Source ? v : u);
  return out;
}

// Whether some point of the open arc is within distance < 1 of y.
bool may_reach(const Arc& arc, const CirclePoint& y) {
  ArcSet a = ArcSet::arc(y.circumference(), arc.start.pos(), arc.length());
  return !a.intersect(ArcSet::ball(y, QuadScalar(1))).is_empty();
}

QuadScalar step_of(std::int64_t i, std::int64_t m) { return QuadScalar(make_rational(i, m)); }

}  // namespace

PartialIso::PartialIso(GraphOracle& source, GraphOracle& target, VertexId source_origin,
                       VertexId target_origin)
    : src_(&source), dst_(&target), src_origin_(source_origin), dst_origin_(target_origin) {
  if (source.circumference() != target.circumference())
    throw UsageError("both graphs must live on the same circle");
  std::tie(l_, m_) = rational_parts(source.circumference());
  add(source_origin, target_origin);
}

std::optional<VertexId> PartialIso::image(VertexId u) const {
  auto it = fwd_.find(u);
  if (it == fwd_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> PartialIso::preimage(VertexId v) const {
  auto it = bwd_.find(v);
  if (it == bwd_.end()) return std::nullopt;
  return it->second;
}

CirclePoint PartialIso::relative(Side s, VertexId v) const {
  const GraphOracle& o = oracle(s);
  return o.point(o.position(v).pos() - o.position(origin(s)).pos());
}

QrDecomposition PartialIso::qr(Side s, VertexId v) const { return qr_decompose(relative(s, v), m_); }

void PartialIso::add(VertexId u, VertexId v) {
  if (fwd_.contains(u) || bwd_.contains(v)) throw InvariantViolation("pair would break bijectivity");
  fwd_.emplace(u, v);
  bwd_.emplace(v, u);
  pairs_.emplace_back(u, v);
}

Arc candidate_interval(const PartialIso& iso, Side from, VertexId s) {
  Side to = other(from);
  QrDecomposition qs = iso.qr(from, s);
  QuadScalar one_over_m = step_of(1, iso.m());
  std::optional<QuadScalar> a;
  QuadScalar b = one_over_m;
  for (auto [x, y] : oriented(iso, from)) {
    QuadScalar rx = iso.qr(from, x).r;
    if (rx == qs.r) throw InvariantViolation("vertex shares a residue with a mapped vertex");
    QuadScalar ry = iso.qr(to, y).r;
    if (rx < qs.r) {
      if (!a || *a < ry) a = ry;
    } else if (ry < b) {
      b = ry;
    }
  }
  if (!a || !(*a < b)) throw InvariantViolation("empty candidate interval");
  const GraphOracle& o = iso.oracle(to);
  QuadScalar base = o.position(iso.origin(to)).pos() + step_of(qs.q, iso.m());
  return open_arc(o.point(base + *a), o.point(base + b));
}

namespace {

VertexId single_step(PartialIso& iso, Side from, VertexId s, std::uint64_t budget) {
  if (auto done = iso.mapped(from, s)) {
    ++iso.skips;
    return *done;
  }
  Side to = other(from);
  GraphOracle& src = iso.oracle(from);
  GraphOracle& dst = iso.oracle(to);
  Arc I = candidate_interval(iso, from, s);
  std::vector<VertexId> A, B;
  for (auto [x, y] : oriented(iso, from)) {
    if (src.adjacent(s, x))
      A.push_back(y);
    else if (may_reach(I, dst.position(y)))
      B.push_back(y);
  }
  auto fits = [&](VertexId c) {
    return std::all_of(A.begin(), A.end(), [&](VertexId y) { return dst.adjacent(c, y); }) &&
           std::none_of(B.begin(), B.end(), [&](VertexId y) { return dst.adjacent(c, y); });
  };
  std::optional<VertexId> image;
  QuadScalar half = qs_mul_rat(I.length(), Rational(1, 2));
  for (VertexId c : dst.near(I.at(half), half.approx())) {
    if (dst.tier(c) != Tier::Pool || iso.mapped(to, c) || !I.contains(dst.position(c))) continue;
    if (fits(c)) {
      image = c;
      break;
    }
  }
  if (!image) {
    if (budget == 0) budget = dst.default_budget(A.size(), B.size());
    auto w = dst.find_witness(I, A, B, budget, Tier::Pool);
    if (!w)
      throw BudgetExhausted(std::string("no image in the ") + name(to) + " graph for step " +
                                std::to_string(iso.steps + 1) + " (" + std::to_string(A.size()) +
                                " adjacent, " + std::to_string(B.size()) + " non-adjacent constraints)",
                            budget);
    iso.trials += w->trials;
    image = w->id;
  }
  if (from == Side::Source)
    iso.add(s, *image);
  else
    iso.add(*image, s);
  ++iso.steps;
  return *image;
}

}  // namespace

VertexId forth_step(PartialIso& iso, VertexId s, std::uint64_t budget) {
  return single_step(iso, Side::Source, s, budget);
}

VertexId back_step(PartialIso& iso, VertexId s_prime, std::uint64_t budget) {
  return single_step(iso, Side::Target, s_prime, budget);
}

IsoCheck verify_partial_iso(const PartialIso& iso) {
  IsoCheck c;
  const auto& P = iso.pairs();
  auto fail = [&](std::string why) {
    if (c.ok) c.failure = std::move(why);
    c.ok = false;
  };
  if (P.empty() || P[0] != std::make_pair(iso.origin(Side::Source), iso.origin(Side::Target)))
    fail("origin is not mapped to origin");
  std::vector<QrDecomposition> qu, qv;
  for (auto [u, v] : P) {
    qu.push_back(iso.qr(Side::Source, u));
    qv.push_back(iso.qr(Side::Target, v));
    if (qu.back().q != qv.back().q) fail("step mismatch at pair " + std::to_string(c.pairs_checked));
    ++c.pairs_checked;
  }
  const GraphOracle& g = iso.oracle(Side::Source);
  const GraphOracle& h = iso.oracle(Side::Target);
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = i + 1; j < P.size(); ++j) {
      if ((qu[i].r < qu[j].r) != (qv[i].r < qv[j].r) || (qu[j].r < qu[i].r) != (qv[j].r < qv[i].r))
        fail("residue order differs for pairs " + std::to_string(i) + ", " + std::to_string(j));
      bool e = g.adjacent(P[i].first, P[j].first);
      if (e != h.adjacent(P[i].second, P[j].second))
        fail("adjacency differs for pairs " + std::to_string(i) + ", " + std::to_string(j));
      c.edges += e;
      ++c.adjacency_checks;
    }
  }
  return c;
}

namespace {

// Insertion-order enumeration with a cursor; fresh vertices once the pool
// runs out.
class Enumerator {
 public:
  Enumerator(PartialIso& iso, Side side) : iso_(iso), side_(side) {}

  VertexId next() {
    GraphOracle& o = iso_.oracle(side_);
    if (cursor_ < o.pool().size()) return o.pool()[cursor_++];
    std::uint64_t k = fresh_++;
    QuadScalar start = qs_mul_rat(o.circumference(), Rational(static_cast<long>(k % 4), 4));
    Arc arc = open_arc(o.point(start), o.point(start + qs_mul_rat(o.circumference(), Rational(1, 4))));
    VertexId v = o.sample_vertex_in_arc(arc, o.next_stream(), Tier::Pool);
    cursor_ = o.pool().size();
    return v;
  }

 private:
  PartialIso& iso_;
  Side side_;
  std::size_t cursor_ = 1;
  std::uint64_t fresh_ = 0;
};

}  // namespace

BackAndForthResult run_back_and_forth(PartialIso& iso, const BackAndForthOptions& opt) {
  if (!iso.oracle(Side::Source).config().idf_mode || !iso.oracle(Side::Target).config().idf_mode)
    throw UsageError("back-and-forth needs integer-distance-free vertex sets");
  BackAndForthResult res;
  Enumerator es(iso, Side::Source), et(iso, Side::Target);
  for (std::int64_t n = 1; n <= opt.rounds; ++n) {
    try {
      // Already-mapped vertices are skipped (and counted) until the
      // enumeration reaches a new one, so each round adds two pairs.
      VertexId s = es.next();
      for (; iso.image(s); s = es.next()) forth_step(iso, s);
      forth_step(iso, s, opt.budget);
      VertexId t = et.next();
      for (; iso.preimage(t); t = et.next()) back_step(iso, t);
      back_step(iso, t, opt.budget);
    } catch (const BudgetExhausted& e) {
      res.failure = std::string("round ") + std::to_string(n) + ": " + e.what();
      res.failed_budget = e.trials();
      return res;
    }
    if (opt.verify_each_step) {
      IsoCheck c = verify_partial_iso(iso);
      if (!c.ok) throw InvariantViolation("after round " + std::to_string(n) + ": " + c.failure);
    }
    res.rounds_completed = n;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Class variant.

namespace {

bool rational_closed(const GraphOracle& o) {
  return !o.config().idf_mode && !o.config().irrational_offset && o.circumference().is_rational();
}

}  // namespace

ClassIso::ClassIso(GraphOracle& source, GraphOracle& target, std::uint64_t origin_budget) {
  if (!rational_closed(source) || !rational_closed(target))
    throw UsageError("the class variant needs rational circles and rational, shift-closed vertex sets");
  if (source.circumference() != target.circumference())
    throw UsageError("both graphs must live on the same circle");
  auto [l, m] = rational_parts(source.circumference());
  std::vector<VertexId> sc;
  for (std::int64_t i = 0; i < l; ++i) sc.push_back(source.insert(source.point(step_of(i, m))));
  // The origin's class fixes its own image up to the choice of target
  // origin; pick a target origin whose class induces the same graph.
  std::int64_t need_adj = 0, need_non = 0;
  std::vector<std::tuple<std::int64_t, std::int64_t, bool>> internal;
  for (std::int64_t i = 0; i < l; ++i)
    for (std::int64_t j = i + 1; j < l; ++j)
      if (source.within_unit(sc[i], sc[j])) {
        bool e = source.adjacent(sc[i], sc[j]);
        internal.emplace_back(i, j, e);
        (e ? need_adj : need_non)++;
      }
  auto matches = [&](const QuadScalar& t) {
    std::vector<Candidate> cs;
    for (std::int64_t i = 0; i < l; ++i) cs.push_back(target.candidate(target.point(t + step_of(i, m))));
    for (auto [i, j, e] : internal)
      if (target.adjacent(cs[i], cs[j]) != e) return false;
    return true;
  };
  std::optional<QuadScalar> origin;
  if (matches(target.position(0).pos())) origin = target.position(0).pos();
  if (!origin) {
    std::uint64_t budget = origin_budget ? origin_budget : target.default_budget(need_adj, need_non);
    Stream rng(target.seed(), "class-origin", 0);
    Arc window = open_arc(target.point(0), target.point(step_of(1, m)));
    for (std::uint64_t t = 1; t <= budget && !origin; ++t) {
      ++origin_trials;
      Candidate c = target.propose_in_arc(window, rng);
      if (matches(c.pos.pos())) origin = c.pos.pos();
    }
    if (!origin) throw BudgetExhausted("no target origin with a matching class", budget);
  }
  std::vector<VertexId> tc;
  for (std::int64_t i = 0; i < l; ++i) tc.push_back(target.insert(target.point(*origin + step_of(i, m))));
  iso_.emplace(source, target, sc[0], tc[0]);
  for (std::int64_t i = 1; i < l; ++i) iso_->add(sc[i], tc[i]);
  classes_.emplace_back(sc[0], tc[0]);
}

std::vector<VertexId> ClassIso::class_of(Side s, VertexId representative) {
  GraphOracle& o = iso_->oracle(s);
  QuadScalar base = o.position(representative).pos();
  std::vector<VertexId> out;
  for (std::int64_t i = 0; i < iso_->l(); ++i) out.push_back(o.insert(o.point(base + step_of(i, iso_->m()))));
  return out;
}

VertexId ClassIso::class_step(Side from, VertexId s, std::uint64_t budget) {
  PartialIso& iso = *iso_;
  if (auto done = iso.mapped(from, s)) {
    ++iso.skips;
    return *done;
  }
  if (iso.qr(from, s).q != 0) throw UsageError("class steps take representatives in (0, 1/m)");
  Side to = other(from);
  GraphOracle& src = iso.oracle(from);
  GraphOracle& dst = iso.oracle(to);
  const std::int64_t l = iso.l(), m = iso.m();
  Arc I = candidate_interval(iso, from, s);
  std::vector<VertexId> X = class_of(from, s);
  // Per member i: partners that must be adjacent / non-adjacent to Y_i.
  std::vector<std::vector<VertexId>> A(l), B(l);
  std::vector<std::tuple<std::int64_t, std::int64_t, bool>> internal;
  std::size_t nA = 0, nB = 0;
  auto mapped_pairs = oriented(iso, from);
  for (std::int64_t i = 0; i < l; ++i) {
    Arc Ii = open_arc(I.start.shifted(step_of(i, m)), I.end.shifted(step_of(i, m)));
    for (auto [x, y] : mapped_pairs) {
      if (src.adjacent(X[i], x)) {
        A[i].push_back(y);
        ++nA;
      } else if (may_reach(Ii, dst.position(y))) {
        B[i].push_back(y);
        ++nB;
      }
    }
    for (std::int64_t j = i + 1; j < l; ++j)
      if (src.within_unit(X[i], X[j])) {
        bool e = src.adjacent(X[i], X[j]);
        internal.emplace_back(i, j, e);
        ++(e ? nA : nB);
      }
  }
  if (budget == 0) budget = dst.default_budget(nA, nB);
  Stream rng(dst.seed(), "class-step", dst.next_stream());
  std::optional<QuadScalar> found;
  for (std::uint64_t t = 1; t <= budget && !found; ++t) {
    ++iso.trials;
    Candidate c = dst.propose_in_arc(I, rng);
    // Members are built lazily so most rejections cost one candidate.
    std::vector<Candidate> Y;
    bool ok = true;
    for (std::int64_t i = 0; i < l && ok; ++i) {
      Y.push_back(i == 0 ? c : dst.candidate(dst.point(c.pos.pos() + step_of(i, m))));
      const Candidate& yi = Y.back();
      ok = std::all_of(A[i].begin(), A[i].end(), [&](VertexId y) { return dst.adjacent(yi, y); }) &&
           std::none_of(B[i].begin(), B[i].end(), [&](VertexId y) { return dst.adjacent(yi, y); });
      for (auto it = internal.begin(); ok && it != internal.end(); ++it) {
        auto [a, b, e] = *it;
        if (b == i) ok = dst.adjacent(Y[a], yi) == e;
      }
    }
    for (std::size_t i = 1; ok && i < Y.size(); ++i) ok = !dst.find(Y[i].pos).has_value();
    if (ok) found = c.pos.pos();
  }
  if (!found)
    throw BudgetExhausted(std::string("no matching class in the ") + name(to) + " graph for class step " +
                              std::to_string(classes_.size()) + " (" + std::to_string(nA) + " adjacent, " +
                              std::to_string(nB) + " non-adjacent constraints)",
                          budget);
  VertexId rep = dst.insert(dst.point(*found));
  std::vector<VertexId> Y = class_of(to, rep);
  for (std::int64_t i = 0; i < l; ++i) {
    if (from == Side::Source)
      iso.add(X[i], Y[i]);
    else
      iso.add(Y[i], X[i]);
  }
  classes_.emplace_back(from == Side::Source ? s : rep, from == Side::Source ? rep : s);
  ++iso.steps;
  return rep;
}

VertexId forth_step_classes(ClassIso& ci, VertexId s, std::uint64_t budget) {
  return ci.class_step(Side::Source, s, budget);
}

VertexId back_step_classes(ClassIso& ci, VertexId s_prime, std::uint64_t budget) {
  return ci.class_step(Side::Target, s_prime, budget);
}

VertexId sample_representative(ClassIso& ci, Side s) {
  PartialIso& iso = ci.iso();
  GraphOracle& o = iso.oracle(s);
  QuadScalar base = o.position(iso.origin(s)).pos();
  Arc window = open_arc(o.point(base), o.point(base + step_of(1, iso.m())));
  return o.sample_vertex_in_arc(window, o.next_stream(), Tier::Pool);
}

IsoCheck verify_class_translation(ClassIso& ci) {
  IsoCheck c;
  PartialIso& iso = ci.iso();
  for (auto [s, t] : ci.classes()) {
    std::vector<VertexId> X = ci.class_of(Side::Source, s);
    std::set<VertexId> distinct(X.begin(), X.end());
    if (static_cast<std::int64_t>(distinct.size()) != iso.l()) {
      c.ok = false;
      c.failure = "class does not have l members";
    }
    for (std::int64_t i = 0; i < iso.l(); ++i) {
      ++c.pairs_checked;
      auto y = iso.image(X[i]);
      QuadScalar want = iso.relative(Side::Target, t).pos() + step_of(i, iso.m());
      if (!y || !(iso.relative(Side::Target, *y) == iso.oracle(Side::Target).point(want))) {
        if (c.ok) c.failure = "class member " + std::to_string(i) + " is not translated by i/m";
        c.ok = false;
      }
    }
  }
  return c;
}

BackAndForthResult run_class_back_and_forth(ClassIso& ci, const BackAndForthOptions& opt) {
  BackAndForthResult res;
  for (std::int64_t n = 1; n <= opt.rounds; ++n) {
    try {
      forth_step_classes(ci, sample_representative(ci, Side::Source), opt.budget);
      back_step_classes(ci, sample_representative(ci, Side::Target), opt.budget);
    } catch (const BudgetExhausted& e) {
      res.failure = std::string("round ") + std::to_string(n) + ": " + e.what();
      res.failed_budget = e.trials();
      return res;
    }
    if (opt.verify_each_step) {
      IsoCheck c = verify_partial_iso(ci.iso());
      if (!c.ok) throw InvariantViolation("after round " + std::to_string(n) + ": " + c.failure);
    }
    res.rounds_completed = n;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Irrational circles.

NonIsoReport non_iso_evidence(GraphOracle& source, GraphOracle& target, std::int64_t candidates,
                              std::int64_t pairs_per_candidate, bool include_identity) {
  const QuadScalar& L = source.circumference();
  if (L != target.circumference()) throw UsageError("both graphs must live on the same circle");
  if (L.is_rational()) throw UsageError("non-isomorphism evidence is for irrational circles");
  NonIsoReport rep;
  double p = source.p().get_d(), q = target.p().get_d();
  rep.expected_rate = p * (1 - q) + q * (1 - p);
  const Rational grid(1, 1 << 20);
  for (std::int64_t j = 0; j < candidates; ++j) {
    Stream rng(source.seed() ^ target.seed(), "isometry", static_cast<std::uint64_t>(j));
    CandidateEvidence ev;
    if (!(include_identity && j == 0)) {
      ev.reflection = j % 2 == 1;
      ev.rotation = qs_mul_rat(L, grid * Rational(static_cast<unsigned long>(rng.below(1 << 20))));
    }
    QuadScalar sign(ev.reflection ? -1 : 1);
    for (std::int64_t k = 0; k < pairs_per_candidate; ++k) {
      QuadScalar start = qs_mul_rat(L, grid * Rational(static_cast<unsigned long>(rng.below(1 << 20))));
      CirclePoint c0 = source.point(start);
      VertexId x = source.materialize(source.propose_in_arc(open_arc(c0, c0.shifted(QuadScalar(1, 0) / 4)), rng),
                                      Tier::Scratch);
      CirclePoint px = source.position(x);
      VertexId y = source.materialize(
          source.propose_in_arc(open_arc(px.shifted(make_rational(1, 8)), px.shifted(make_rational(7, 8))), rng),
          Tier::Scratch);
      VertexId fx = target.insert(target.point(sign * px.pos() + ev.rotation), Tier::Scratch);
      VertexId fy = target.insert(target.point(sign * source.position(y).pos() + ev.rotation), Tier::Scratch);
      ++ev.pairs;
      if (source.adjacent(x, y) != target.adjacent(fx, fy)) {
        if (!ev.first_disagreement) ev.first_disagreement = k;
        ++ev.disagreements;
      }
    }
    rep.total_pairs += ev.pairs;
    rep.total_disagreements += ev.disagreements;
    rep.candidates.push_back(std::move(ev));
  }
  return rep;
}

nlohmann::ordered_json to_json(const NonIsoReport& r) {
  nlohmann::ordered_json j;
  j["expected_rate"] = r.expected_rate;
  j["total_pairs"] = r.total_pairs;
  j["total_disagreements"] = r.total_disagreements;
  j["observed_rate"] = r.total_pairs ? static_cast<double>(r.total_disagreements) / r.total_pairs : 0.0;
  auto& cs = j["candidates"] = nlohmann::ordered_json::array();
  for (const auto& c : r.candidates)
    cs.push_back({{"rotation", encode(c.rotation)},
                  {"reflection", c.reflection},
                  {"first_disagreement", c.first_disagreement ? nlohmann::ordered_json(*c.first_disagreement)
                                                              : nlohmann::ordered_json()},
                  {"disagreements", c.disagreements},
                  {"pairs", c.pairs}});
  return j;
}

}  // namespace rgc
