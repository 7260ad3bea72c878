#pragma once

// Exact arithmetic primitives: arbitrary-precision integers and rationals,
// residues in Q/Z and Q/2Z, modular inverses and p-adic valuations.
// Everything in this library is computed exactly; no floating point appears
// anywhere downstream.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace torsion {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInvertible : Error { using Error::Error; };
struct ZeroInput : Error { using Error::Error; };
struct OrderNotDividing : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct NotHomogeneousAmbient : Error { using Error::Error; };
struct NotAUnit : Error { using Error::Error; };
struct EvenOrderUnsupported : Error { using Error::Error; };
struct ZeroFraming : Error { using Error::Error; };
struct EvenFraming : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct ProfileAsymmetry : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct CapacityError : Error { using Error::Error; };
struct NOddRequired : Error { using Error::Error; };
struct MissingData : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Floor division/remainder for b > 0: remainder always lands in [0, b).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

// Canonical representative of q in [0, modulus).
Rational rational_mod(const Rational& q, int modulus);

// A rational residue modulo 1 or modulo 2, kept in canonical form:
// value in [0, modulus).  Mod-1 residues model Q/Z (linking form values),
// mod-2 residues model Q/2Z (refinements and rho invariants).
class Residue {
 public:
  Residue() : value_(0), modulus_(1) {}
  Residue(Rational value, int modulus);

  const Rational& value() const { return value_; }
  int modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator-() const;
  Residue scaled(const Int& k) const;

  bool operator==(const Residue& o) const = default;

  std::string str() const;

 private:
  Rational value_;
  int modulus_;
};

Residue normalize_mod(const Rational& q, int modulus);

// Inverse of a modulo m (m >= 1); throws NotInvertible when gcd(a, m) != 1.
Int mod_inverse(const Int& a, const Int& m);

// Largest e with p^e | a, for prime p; throws ZeroInput on a = 0.
int padic_valuation(const Int& a, const Int& p);

// Rationals serialize as "a/b" (or "a" for integers), both directions.
std::string format_rational(const Rational& q);
Rational parse_rational(std::string_view text);

bool is_prime(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

std::int64_t pow_i64(std::int64_t base, int exp);

// Narrowing conversion guard for desk-scale quantities.
std::int64_t to_i64(const Int& a);

}  // namespace torsion
