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

#include "rgc/quad.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace rgc {

namespace {

int sgn(const Rational& q) { return ::sgn(q); }

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string trim(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

// floor(y) for a nonnegative rational y.
Integer floor_nonneg(const Rational& y) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return r;
}

// floor(|b| * sqrt2) via floor(sqrt(y)) == isqrt(floor(y)) for y = 2b^2.
Integer floor_abs_b_sqrt2(const Rational& b) {
  Rational y = 2 * b * b;
  Integer fy = floor_nonneg(y);
  Integer r;
  mpz_sqrt(r.get_mpz_t(), fy.get_mpz_t());
  return r;
}

Integer floor_rational(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw UsageError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string body = s.substr(i);
  auto slash = body.find('/');
  std::string num = body.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed rational '" + s + "'");
  Integer n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  if (neg) n = -n;
  return make_rational(n, d);
}

std::string encode_rational(const Rational& q) {
  std::string out = sgn(q) < 0 ? "-" : "+";
  Integer n = abs(q.get_num());
  out += n.get_str();
  out += '/';
  out += q.get_den().get_str();
  return out;
}

int QuadScalar::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| vs |b|*sqrt2 decided by a^2 vs 2b^2 (never equal).
  Rational a2 = a_ * a_;
  Rational b2 = 2 * b_ * b_;
  return a2 > b2 ? sa : sb;
}

double QuadScalar::approx() const {
  return a_.get_d() + b_.get_d() * std::sqrt(2.0);
}

double QuadScalar::approx_error() const {
  double mag = std::fabs(a_.get_d()) + 1.5 * std::fabs(b_.get_d());
  return mag * 8.0 * std::numeric_limits<double>::epsilon() +
         std::numeric_limits<double>::denorm_min();
}

QuadScalar& QuadScalar::operator+=(const QuadScalar& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator-=(const QuadScalar& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadScalar& QuadScalar::operator*=(const QuadScalar& o) {
  Rational a = a_ * o.a_ + 2 * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadScalar& QuadScalar::operator/=(const QuadScalar& o) {
  Rational norm = o.a_ * o.a_ - 2 * o.b_ * o.b_;
  if (norm == 0) throw UsageError("division by zero in Q[sqrt2]");
  *this *= QuadScalar(o.a_ / norm, -o.b_ / norm);
  return *this;
}

std::strong_ordering operator<=>(const QuadScalar& x, const QuadScalar& y) {
  int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

QuadScalar qs_add(const QuadScalar& x, const QuadScalar& y) { return x + y; }

Ordering qs_cmp(const QuadScalar& x, const QuadScalar& y) {
  int s = (x - y).sign();
  return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

Integer qs_floor(const QuadScalar& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt2_part();
  if (b == 0) return floor_rational(a);
  // b*sqrt2 lies in [t, t+1) when b > 0 and in (-t-1, -t] when b < 0, so
  // floor(x) is within two of floor(a + lower bound).
  Integer t = floor_abs_b_sqrt2(b);
  Rational lower = sgn(b) > 0 ? Rational(a + Rational(t)) : Rational(a - Rational(t) - 1);
  Integer n = floor_rational(lower);
  while (QuadScalar(Rational(n + 1)) <= x) ++n;
  while (QuadScalar(Rational(n)) > x) --n;
  return n;
}

Integer qs_ceil(const QuadScalar& x) { return -qs_floor(-x); }

std::int64_t qs_floor_i64(const QuadScalar& x) {
  Integer f = qs_floor(x);
  if (!f.fits_slong_p()) throw UsageError("floor does not fit in 64 bits");
  return f.get_si();
}

QuadScalar qs_mul_rat(const QuadScalar& x, const Rational& c) {
  return QuadScalar(x.rational_part() * c, x.sqrt2_part() * c);
}

QuadScalar abs(const QuadScalar& x) { return x.sign() < 0 ? -x : x; }

const QuadScalar& min(const QuadScalar& x, const QuadScalar& y) { return y < x ? y : x; }
const QuadScalar& max(const QuadScalar& x, const QuadScalar& y) { return x < y ? y : x; }

std::string encode(const QuadScalar& x) {
  return encode_rational(x.rational_part()) + encode_rational(x.sqrt2_part()) + "*sqrt2";
}

QuadScalar decode(std::string_view text) {
  constexpr std::string_view suffix = "*sqrt2";
  if (text.size() < suffix.size() + 2 || text.substr(text.size() - suffix.size()) != suffix)
    throw ParseError("not a canonical encoding: '" + std::string(text) + "'");
  std::string_view body = text.substr(0, text.size() - suffix.size());
  std::size_t split = body.find_first_of("+-", 1);
  if (split == std::string_view::npos || (body[0] != '+' && body[0] != '-'))
    throw ParseError("not a canonical encoding: '" + std::string(text) + "'");
  QuadScalar value(parse_rational(body.substr(0, split)), parse_rational(body.substr(split)));
  if (encode(value) != text)
    throw ParseError("non-canonical encoding: '" + std::string(text) + "'");
  return value;
}

QuadScalar parse_quad(std::string_view text) {
  std::string s = trim(text);
  constexpr std::string_view root = "sqrt2";
  if (s.size() < root.size() || s.substr(s.size() - root.size()) != root)
    return QuadScalar(parse_rational(s));
  std::string rest = s.substr(0, s.size() - root.size());
  if (!rest.empty() && rest.back() == '*') rest.pop_back();
  std::size_t split = rest.find_last_of("+-");
  // A sign right after '/' or at index 0 belongs to the coefficient itself.
  Rational a = 0;
  std::string coef = rest;
  if (split != std::string::npos && split > 0) {
    a = parse_rational(rest.substr(0, split));
    coef = rest.substr(split);
  }
  Rational b;
  if (coef.empty() || coef == "+")
    b = 1;
  else if (coef == "-")
    b = -1;
  else
    b = parse_rational(coef);
  return QuadScalar(a, b);
}

std::string to_display(const QuadScalar& x) {
  const Rational& a = x.rational_part();
  const Rational& b = x.sqrt2_part();
  if (b == 0) return a.get_str();
  std::string out = a == 0 ? "" : a.get_str();
  if (a != 0) out += sgn(b) < 0 ? "-" : "+";
  else if (sgn(b) < 0) out += "-";
  Rational ab = ::abs(b);
  if (ab != 1) out += ab.get_str() + "*";
  out += "sqrt2";
  return out;
}

}  // namespace rgc
