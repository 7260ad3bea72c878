#include "torsion/exact.hpp"

#include <boost/multiprecision/integer.hpp>

#include <limits>

namespace torsion {

Int floor_div(const Int& a, const Int& b) {
  if (b <= 0) throw Error("floor_div requires positive divisor");
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  return a - floor_div(a, b) * b;
}

Rational rational_mod(const Rational& q, int modulus) {
  if (modulus != 1 && modulus != 2) throw Error("residue modulus must be 1 or 2");
  const Int num = numerator(q);
  const Int den = denominator(q);
  Int whole = floor_div(num, den * modulus);
  return q - Rational(whole * modulus);
}

Residue::Residue(Rational value, int modulus) : modulus_(modulus) {
  value_ = rational_mod(value, modulus);
}

Residue Residue::operator+(const Residue& o) const {
  if (modulus_ != o.modulus_) throw Error("residue modulus mismatch");
  return Residue(value_ + o.value_, modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  if (modulus_ != o.modulus_) throw Error("residue modulus mismatch");
  return Residue(value_ - o.value_, modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue Residue::scaled(const Int& k) const {
  return Residue(value_ * Rational(k), modulus_);
}

std::string Residue::str() const { return format_rational(value_); }

Residue normalize_mod(const Rational& q, int modulus) {
  return Residue(q, modulus);
}

namespace {

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return abs(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, mod_floor(a, b), x1, y1);
  x = y1;
  y = x1 - floor_div(a, b) * y1;
  return g;
}

}  // namespace

Int mod_inverse(const Int& a, const Int& m) {
  if (m < 1) throw Error("mod_inverse requires modulus >= 1");
  if (m == 1) return 0;
  Int x, y;
  Int g = ext_gcd(mod_floor(a, m), m, x, y);
  if (g != 1) throw NotInvertible("element not invertible modulo " + m.str());
  return mod_floor(x, m);
}

int padic_valuation(const Int& a, const Int& p) {
  if (a == 0) throw ZeroInput("valuation of zero is undefined");
  if (p < 2) throw Error("valuation base must be a prime");
  Int r = abs(a);
  int v = 0;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

std::string format_rational(const Rational& q) {
  const Int num = numerator(q);
  const Int den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_int(text)) throw ParseError("bad integer literal: " + std::string(text));
    return Rational(Int(std::string(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) throw ParseError("bad rational literal: " + std::string(text));
  Int d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator: " + std::string(text));
  return Rational(Int(std::string(num))) / d;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw Error("factorize requires a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t to_i64(const Int& a) {
  if (a > std::numeric_limits<std::int64_t>::max() ||
      a < std::numeric_limits<std::int64_t>::min())
    throw RangeError("value exceeds 64-bit range: " + a.str());
  return static_cast<std::int64_t>(a);
}

std::int64_t pow_i64(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::int64_t{1} << 62) / base)
      throw CapacityError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace torsion
