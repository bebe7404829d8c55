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

#include <mpfr.h>

#include <random>

#include "doctest.h"
#include "rgc/quad.hpp"

using namespace rgc;

namespace {

QuadScalar q(long a, long ad, long b, long bd) {
  return QuadScalar(make_rational(a, ad), make_rational(b, bd));
}

// Encloses a + b*sqrt2 in [lo, hi] at 256 bits using directed rounding.
struct Enclosure {
  mpfr_t lo, hi;
  explicit Enclosure(const QuadScalar& x) {
    mpfr_inits2(256, lo, hi, static_cast<mpfr_ptr>(nullptr));
    mpfr_t s, t;
    mpfr_inits2(256, s, t, static_cast<mpfr_ptr>(nullptr));
    for (int side = 0; side < 2; ++side) {
      mpfr_rnd_t rnd = side == 0 ? MPFR_RNDD : MPFR_RNDU;
      mpfr_rnd_t anti = side == 0 ? MPFR_RNDU : MPFR_RNDD;
      const Rational& b = x.sqrt2_part();
      // b*sqrt2 rounded toward rnd: pick sqrt2's rounding by the sign of b.
      mpfr_sqrt_ui(s, 2, sgn(b) >= 0 ? rnd : anti);
      mpfr_mul_q(t, s, b.get_mpq_t(), rnd);
      mpfr_add_q(side == 0 ? lo : hi, t, x.rational_part().get_mpq_t(), rnd);
    }
    mpfr_clears(s, t, static_cast<mpfr_ptr>(nullptr));
  }
  ~Enclosure() { mpfr_clears(lo, hi, static_cast<mpfr_ptr>(nullptr)); }
};

QuadScalar random_quad(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-200, 200), den(1, 60);
  return q(num(rng), den(rng), num(rng), den(rng));
}

}  // namespace

TEST_SUITE("quad") {

TEST_CASE("componentwise addition") {
  CHECK(qs_add(QuadScalar(1), QuadScalar::sqrt2()) == q(1, 1, 1, 1));
  CHECK(qs_add(q(3, 7, -2, 5), QuadScalar(0)) == q(3, 7, -2, 5));
  CHECK(qs_add(q(1, 2, 1, 1), q(1, 2, -1, 1)) == QuadScalar(1));
}

TEST_CASE("comparison examples") {
  CHECK(qs_cmp(QuadScalar(1), QuadScalar::sqrt2()) == Ordering::LT);
  CHECK(qs_cmp(q(5, 3, 2, 7), q(5, 3, 2, 7)) == Ordering::EQ);
  CHECK(qs_cmp(QuadScalar(3), q(0, 1, 2, 1)) == Ordering::GT);
}

TEST_CASE("floor examples") {
  CHECK(qs_floor(q(7, 2, 0, 1)) == 3);
  CHECK(qs_floor(QuadScalar::sqrt2()) == 1);
  CHECK(qs_floor(q(-1, 2, 1, 1)) == 0);
  CHECK(qs_floor(q(-7, 2, 0, 1)) == -4);
  CHECK(qs_floor(q(0, 1, -1, 1)) == -2);
  CHECK(qs_ceil(QuadScalar::sqrt2()) == 2);
}

TEST_CASE("rational scaling") {
  CHECK(qs_mul_rat(q(1, 1, 1, 1), 2) == q(2, 1, 2, 1));
  CHECK(qs_mul_rat(q(4, 9, -1, 3), 1) == q(4, 9, -1, 3));
  CHECK(qs_mul_rat(q(3, 1, 1, 1), make_rational(1, 3)) == q(1, 1, 1, 3));
}

TEST_CASE("comparison agrees with 256-bit interval evaluation") {
  std::mt19937_64 rng(7);
  int conclusive = 0;
  for (int i = 0; i < 10000; ++i) {
    QuadScalar x = random_quad(rng), y = random_quad(rng);
    if (i % 10 == 0) y = x;
    Enclosure d(x - y);
    Ordering c = qs_cmp(x, y);
    if (mpfr_sgn(d.lo) > 0) {
      CHECK(c == Ordering::GT);
      ++conclusive;
    } else if (mpfr_sgn(d.hi) < 0) {
      CHECK(c == Ordering::LT);
      ++conclusive;
    } else if (x == y) {
      CHECK(c == Ordering::EQ);
    }
  }
  CHECK(conclusive > 8000);
}

TEST_CASE("floor brackets its argument") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    QuadScalar x = random_quad(rng);
    QuadScalar f(Rational(qs_floor(x)));
    CHECK(f <= x);
    CHECK(x < f + QuadScalar(1));
  }
}

TEST_CASE("field laws hold exactly") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    QuadScalar a = random_quad(rng), b = random_quad(rng), c = random_quad(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("canonical encoding") {
  CHECK(encode(QuadScalar(0)) == "+0/1+0/1*sqrt2");
  CHECK(encode(q(-6, 4, 1, 1)) == "-3/2+1/1*sqrt2");
  CHECK(decode("+5/2-1/3*sqrt2") == q(5, 2, -1, 3));
  CHECK_THROWS_AS(decode("+6/4+0/1*sqrt2"), ParseError);
  CHECK_THROWS_AS(decode("+05/2+0/1*sqrt2"), ParseError);
  CHECK_THROWS_AS(decode("5/2+0/1*sqrt2"), ParseError);
  CHECK(parse_quad("7/2") == q(7, 2, 0, 1));
  CHECK(parse_quad("2+sqrt2") == q(2, 1, 1, 1));
  CHECK(parse_quad("1/2*sqrt2") == q(0, 1, 1, 2));
  CHECK(parse_quad("-sqrt2") == q(0, 1, -1, 1));
  CHECK(parse_quad("3-2/5*sqrt2") == q(3, 1, -2, 5));
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    QuadScalar x = random_quad(rng);
    CHECK(decode(encode(x)) == x);
    CHECK(parse_quad(encode(x)) == x);
  }
}

}
