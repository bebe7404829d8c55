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

#include <array>
#include <set>

#include "doctest.h"
#include "rgc/random.hpp"

using namespace rgc;

TEST_SUITE("random") {

TEST_CASE("siphash reference vectors") {
  const std::uint64_t k0 = 0x0706050403020100ULL, k1 = 0x0f0e0d0c0b0a0908ULL;
  std::array<unsigned char, 15> msg{};
  for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = static_cast<unsigned char>(i);
  CHECK(siphash24(k0, k1, std::span<const unsigned char>(msg.data(), 0)) == 0x726fdb47dd0e0e31ULL);
  CHECK(siphash24(k0, k1, std::span<const unsigned char>(msg.data(), 1)) == 0x74f839c593dc67fdULL);
  CHECK(siphash24(k0, k1, std::span<const unsigned char>(msg.data(), 8)) == 0x93f5f5799a932462ULL);
  CHECK(siphash24(k0, k1, std::span<const unsigned char>(msg.data(), 15)) == 0xa129ca6149be45e5ULL);
}

TEST_CASE("streams are reproducible and separated by name and index") {
  Stream a(42, "witness", 3), b(42, "witness", 3), c(42, "witness", 4), d(42, "densify", 3);
  std::uint64_t x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
}

TEST_CASE("bounded draws stay in range and cover it") {
  Stream s(1, "below");
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t v = s.below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  for (int i = 0; i < 1000; ++i) {
    double u = s.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

}
