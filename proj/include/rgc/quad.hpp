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

// Exact arithmetic in the field Q[sqrt2].

#ifndef RGC_QUAD_HPP
#define RGC_QUAD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "rgc/errors.hpp"

namespace rgc {

/// Arbitrary-precision rational, always canonical (lowest terms, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// Builds num/den in canonical form. Throws UsageError on den == 0.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "n" or "n/d" (optional leading sign) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "n/d" with explicit sign, e.g. "+3/4", "-1/1", "+0/1".
std::string encode_rational(const Rational& q);

/// A number a + b*sqrt2 with rational a, b. The pair (a, b) is unique for a
/// given real value because sqrt2 is irrational.
class QuadScalar {
 public:
  QuadScalar() = default;
  QuadScalar(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {}  // NOLINT
  QuadScalar(long a) : a_(a), b_(0) {}                                            // NOLINT

  static QuadScalar sqrt2() { return QuadScalar(0, 1); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt2_part() const { return b_; }

  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  /// -1, 0 or +1, decided symbolically.
  int sign() const;

  /// Nearest double, for diagnostics and index keys only.
  double approx() const;
  /// Upper bound on |approx() - value|.
  double approx_error() const;

  QuadScalar& operator+=(const QuadScalar& o);
  QuadScalar& operator-=(const QuadScalar& o);
  QuadScalar& operator*=(const QuadScalar& o);
  QuadScalar& operator/=(const QuadScalar& o);

  friend QuadScalar operator+(QuadScalar x, const QuadScalar& y) { return x += y; }
  friend QuadScalar operator-(QuadScalar x, const QuadScalar& y) { return x -= y; }
  friend QuadScalar operator*(QuadScalar x, const QuadScalar& y) { return x *= y; }
  friend QuadScalar operator/(QuadScalar x, const QuadScalar& y) { return x /= y; }
  QuadScalar operator-() const { return QuadScalar(-a_, -b_); }

  friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y);

 private:
  Rational a_{0};
  Rational b_{0};
};

enum class Ordering { LT, EQ, GT };

QuadScalar qs_add(const QuadScalar& x, const QuadScalar& y);
Ordering qs_cmp(const QuadScalar& x, const QuadScalar& y);
/// Greatest integer n with n <= x.
Integer qs_floor(const QuadScalar& x);
/// Smallest integer n with n >= x.
Integer qs_ceil(const QuadScalar& x);
QuadScalar qs_mul_rat(const QuadScalar& x, const Rational& c);

/// floor(x) as int64; throws UsageError if it does not fit.
std::int64_t qs_floor_i64(const QuadScalar& x);

QuadScalar abs(const QuadScalar& x);
const QuadScalar& min(const QuadScalar& x, const QuadScalar& y);
const QuadScalar& max(const QuadScalar& x, const QuadScalar& y);

/// Canonical text "a_num/a_den+b_num/b_den*sqrt2" with explicit signs.
std::string encode(const QuadScalar& x);
/// Strict inverse of encode(). Throws ParseError on anything non-canonical.
QuadScalar decode(std::string_view text);
/// Lenient reader for config input: "7/2", "2+1*sqrt2", "1/2*sqrt2", or a
/// canonical encoding.
QuadScalar parse_quad(std::string_view text);

std::string to_display(const QuadScalar& x);

}  // namespace rgc

#endif  // RGC_QUAD_HPP
