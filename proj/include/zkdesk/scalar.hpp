#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "zkdesk/error.hpp"

namespace zkdesk {

/// A prime field GF(p). Instances are interned: two fields with the same
/// modulus are the same object, so scalars compare their mode by pointer.
class PrimeField {
 public:
  /// Returns the interned field for `modulus`. Throws Error if the modulus is
  /// not (probably) prime.
  static const PrimeField* get(const mpz_class& modulus);
  static const PrimeField* get(std::string_view decimal_modulus);

  /// The 254-bit SNARK scalar field order used by default.
  static const PrimeField* default_field();

  const mpz_class& modulus() const { return modulus_; }
  std::string modulus_string() const { return modulus_.get_str(); }

  PrimeField(const PrimeField&) = delete;
  PrimeField& operator=(const PrimeField&) = delete;

 private:
  explicit PrimeField(mpz_class modulus) : modulus_(std::move(modulus)) {}
  friend struct FieldRegistry;

  mpz_class modulus_;
};

inline constexpr std::string_view kDefaultModulus =
    "21888242871839275222246405745257275088548364400416034343698204186575808495617";

/// Arithmetic mode shared by a computation: a prime field, or exact rationals
/// when `field` is null.
struct Domain {
  const PrimeField* field = nullptr;

  static Domain rational() { return Domain{}; }
  static Domain of(const PrimeField* f) { return Domain{f}; }
  static Domain default_field() { return Domain{PrimeField::default_field()}; }

  bool is_rational() const { return field == nullptr; }
  bool operator==(const Domain&) const = default;

  std::string describe() const;
};

/// Dual-mode exact number: an element of a prime field (canonical value in
/// [0, p)) or a reduced rational with positive denominator.
class Scalar {
 public:
  /// Rational zero.
  Scalar() : value_(mpq_class(0)) {}

  Scalar(Domain d, long v);
  Scalar(Domain d, const mpz_class& v);
  /// Rational mode only, or a field element num * den^-1.
  Scalar(Domain d, const mpz_class& num, const mpz_class& den);

  static Scalar zero(Domain d) { return Scalar(d, 0L); }
  static Scalar one(Domain d) { return Scalar(d, 1L); }

  /// Parses a decimal integer (either mode, reduced mod p in field mode) or a
  /// "num/den" string (rational mode; a field-mode fraction means num/den in
  /// the field).
  static Scalar parse(Domain d, std::string_view text);

  Domain domain() const { return Domain{field_}; }
  bool is_rational() const { return field_ == nullptr; }
  bool is_zero() const;
  bool is_one() const;

  /// Field value in [0, p). Throws ModeMismatch in rational mode.
  const mpz_class& field_value() const;
  /// Exact rational value (field elements are returned as their canonical
  /// integer representative).
  mpq_class rational_value() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Throws DivisionByZero on zero.
  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  /// Exact equality; scalars of different modes are never equal.
  bool operator==(const Scalar& o) const;

  /// Decimal integer in field mode, "num/den" in rational mode.
  std::string to_string() const;
  double to_double() const;

 private:
  void require_same(const Scalar& o) const;
  void reduce();

  const PrimeField* field_ = nullptr;
  std::variant<mpz_class, mpq_class> value_;
};

}  // namespace zkdesk
