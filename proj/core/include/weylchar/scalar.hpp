#pragma once

// Exact scalars: arbitrary-precision rationals and elements of cyclotomic
// fields Q(zeta_n). Every character value and Fourier coefficient in the
// library is a Cyclotomic.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace weylchar {

using Integer = mpz_class;
using Rational = mpq_class;  // gmp keeps mpq_class canonical under arithmetic

/// Builds the reduced fraction num/den. Throws std::domain_error if den == 0.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

std::string to_string(const Rational& q);

/// Euler's totient.
int euler_phi(int n);

/// Integer coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int n);

/// An element of Q(zeta_n) stored in the power basis 1, z, ..., z^{phi(n)-1}
/// modulo Phi_n, with n the smallest conductor of the value (n never 2 mod 4;
/// rationals have conductor 1). Values are always kept normalized, so
/// structural equality is numeric equality.
class Cyclotomic {
 public:
  Cyclotomic();  // zero
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// zeta_n^k.
  static Cyclotomic root_of_unity(int n, long k = 1);

  /// Builds sum_k coeffs[k] * zeta_n^k for any length of coeffs and
  /// normalizes.
  static Cyclotomic from_powers(int n, const std::vector<Rational>& coeffs);

  /// Parses the scalar literal grammar: integers, a/b, z<n>, z<n>^<k>,
  /// joined by +, - and *. Parentheses are accepted. Throws DataError.
  static Cyclotomic parse(std::string_view text);

  int conductor() const { return conductor_; }
  /// Coefficients on 1, z, ..., z^{phi(n)-1}; size phi(conductor()).
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  std::optional<Integer> as_integer() const;

  /// Complex conjugation, zeta_n -> zeta_n^{n-1}.
  Cyclotomic conjugate() const;
  /// The Galois automorphism zeta_n -> zeta_n^k, gcd(k, n) = 1 for every
  /// conductor n involved.
  Cyclotomic galois(long k) const;

  /// Coefficients of this value as a polynomial in zeta_m, length m, for a
  /// multiple m of the conductor (not reduced modulo Phi_m).
  std::vector<Rational> lift(int m) const;

  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& rhs);
  Cyclotomic& operator-=(const Cyclotomic& rhs);
  Cyclotomic& operator*=(const Cyclotomic& rhs);
  Cyclotomic operator-() const;

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// A fixed total order used for canonical sorting: conductor ascending,
  /// then coefficient vectors lexicographically. Not an order on C.
  friend std::strong_ordering canonical_compare(const Cyclotomic& a, const Cyclotomic& b);

  std::size_t hash() const;

 private:
  Cyclotomic(int n, std::vector<Rational> reduced_coeffs);
  void normalize_from_dense(int n, std::vector<Rational> dense);

  int conductor_ = 1;
  std::vector<Rational> coeffs_;
};

/// Returns the canonical representative. Cyclotomic values are normalized on
/// construction, so this is the identity; kept as the named operation.
Cyclotomic normalize(const Cyclotomic& c);
Cyclotomic conjugate(const Cyclotomic& c);
std::optional<Integer> as_integer(const Cyclotomic& c);

std::ostream& operator<<(std::ostream& os, const Cyclotomic& c);

}  // namespace weylchar

template <>
struct std::hash<weylchar::Cyclotomic> {
  std::size_t operator()(const weylchar::Cyclotomic& c) const noexcept { return c.hash(); }
};
