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

// Self-contained isomorphism certificates: everything needed to re-check a
// partial isomorphism without access to the run that produced it.

#include "rgc/isomorphism.hpp"

#include <set>

namespace rgc {

namespace {

constexpr const char* kSchema = "rgc.partial-iso/1";

nlohmann::ordered_json side_json(const GraphOracle& o, VertexId origin) {
  return {{"seed", o.seed()},
          {"p", encode_rational(o.p())},
          {"idf", o.config().idf_mode},
          {"origin", encode(o.position(origin).pos())}};
}

}  // namespace

nlohmann::ordered_json certificate(const PartialIso& iso, const IsoCheck& check) {
  const GraphOracle& g = iso.oracle(Side::Source);
  const GraphOracle& h = iso.oracle(Side::Target);
  nlohmann::ordered_json c;
  c["schema"] = kSchema;
  c["L"] = encode(g.circumference());
  c["l"] = iso.l();
  c["m"] = iso.m();
  c["source"] = side_json(g, iso.origin(Side::Source));
  c["target"] = side_json(h, iso.origin(Side::Target));
  auto& pairs = c["pairs"] = nlohmann::ordered_json::array();
  for (auto [u, v] : iso.pairs()) {
    QrDecomposition qu = iso.qr(Side::Source, u);
    pairs.push_back({{"u", encode(g.position(u).pos())},
                     {"v", encode(h.position(v).pos())},
                     {"q", qu.q},
                     {"r_u", encode(qu.r)},
                     {"r_v", encode(iso.qr(Side::Target, v).r)}});
  }
  c["check"] = {{"ok", check.ok},
                {"pairs", check.pairs_checked},
                {"adjacency_checks", check.adjacency_checks},
                {"edges", check.edges}};
  return c;
}

IsoCheck verify_certificate(const nlohmann::ordered_json& cert) {
  IsoCheck res;
  auto fail = [&](std::string why) {
    if (res.ok) res.failure = std::move(why);
    res.ok = false;
  };
  try {
    if (cert.at("schema").get<std::string>() != kSchema) throw ParseError("unknown certificate schema");
    QuadScalar L = decode(cert.at("L").get<std::string>());
    auto [l, m] = rational_parts(L);
    if (cert.at("l").get<std::int64_t>() != l || cert.at("m").get<std::int64_t>() != m)
      fail("l/m do not match L");
    // Fresh oracles: the vertex set is whatever the certificate lists.
    auto make = [&](const nlohmann::ordered_json& side) {
      OracleConfig cfg;
      cfg.L = L;
      cfg.seed = side.at("seed").get<std::uint64_t>();
      cfg.p = parse_rational(side.at("p").get<std::string>());
      return GraphOracle(cfg);
    };
    GraphOracle g = make(cert.at("source"));
    GraphOracle h = make(cert.at("target"));
    CirclePoint og = g.point(decode(cert.at("source").at("origin").get<std::string>()));
    CirclePoint oh = h.point(decode(cert.at("target").at("origin").get<std::string>()));
    std::vector<VertexId> U, V;
    std::set<VertexId> seen_u, seen_v;
    std::vector<QrDecomposition> qu, qv;
    for (const auto& pr : cert.at("pairs")) {
      CirclePoint pu = g.point(decode(pr.at("u").get<std::string>()));
      CirclePoint pv = h.point(decode(pr.at("v").get<std::string>()));
      U.push_back(g.insert(pu, Tier::Scratch));
      V.push_back(h.insert(pv, Tier::Scratch));
      if (!seen_u.insert(U.back()).second || !seen_v.insert(V.back()).second)
        fail("a vertex appears in two pairs");
      qu.push_back(qr_decompose(g.point(pu.pos() - og.pos()), m));
      qv.push_back(qr_decompose(h.point(pv.pos() - oh.pos()), m));
      std::size_t i = qu.size() - 1;
      if (qu[i].q != qv[i].q || qu[i].q != pr.at("q").get<std::int64_t>())
        fail("step mismatch at pair " + std::to_string(i));
      if (!(qu[i].r == decode(pr.at("r_u").get<std::string>())) ||
          !(qv[i].r == decode(pr.at("r_v").get<std::string>())))
        fail("stated residue is wrong at pair " + std::to_string(i));
      ++res.pairs_checked;
    }
    if (U.empty() || !(g.position(U[0]) == og) || !(h.position(V[0]) == oh))
      fail("first pair is not origin to origin");
    for (std::size_t i = 0; i < U.size(); ++i)
      for (std::size_t j = i + 1; j < U.size(); ++j) {
        if ((qu[i].r < qu[j].r) != (qv[i].r < qv[j].r) || (qu[j].r < qu[i].r) != (qv[j].r < qv[i].r))
          fail("residue order differs for pairs " + std::to_string(i) + ", " + std::to_string(j));
        bool e = g.adjacent(U[i], U[j]);
        if (e != h.adjacent(V[i], V[j]))
          fail("adjacency differs for pairs " + std::to_string(i) + ", " + std::to_string(j));
        res.edges += e;
        ++res.adjacency_checks;
      }
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("malformed certificate: ") + e.what());
  } catch (const Error& e) {
    fail(std::string("malformed certificate: ") + e.what());
  }
  return res;
}

}  // namespace rgc
