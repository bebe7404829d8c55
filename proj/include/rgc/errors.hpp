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

#ifndef RGC_ERRORS_HPP
#define RGC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rgc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of the call was violated (mismatched circles, antipodal
/// arcs, irrational L where a rational one is required, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A randomized search ran out of trials. Retrying with a larger budget may
/// succeed; the run is replayable from its seed.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::uint64_t trials)
      : Error(what), trials_(trials) {}
  std::uint64_t trials() const { return trials_; }

 private:
  std::uint64_t trials_;
};

/// An internal invariant failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace rgc

#endif  // RGC_ERRORS_HPP
