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

// SipHash-2-4 and the named random streams derived from it.

#ifndef RGC_RANDOM_HPP
#define RGC_RANDOM_HPP

#include <cstdint>
#include <span>
#include <string_view>

namespace rgc {

/// SipHash-2-4 of `data` under the 128-bit key (k0, k1).
std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, std::span<const unsigned char> data);
std::uint64_t siphash24(std::uint64_t k0, std::uint64_t k1, std::string_view data);

/// A reproducible random stream, identified by (seed, name, index). All
/// randomness in the library flows through these so that each consumer can
/// be replayed on its own.
class Stream {
 public:
  Stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0);

  std::uint64_t next();
  /// Uniform in [0, n). Requires n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1).
  double unit();

 private:
  std::uint64_t state_;
};

}  // namespace rgc

#endif  // RGC_RANDOM_HPP
