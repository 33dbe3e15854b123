#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "tsdlink/error.hpp"

namespace tsdlink {

/// Ground field descriptor: the rationals, or a prime field F_p.
class Field {
 public:
  constexpr Field() noexcept = default;

  static constexpr Field rational() noexcept { return Field(); }
  /// Throws Error(invalid_argument) unless p is a prime below 2^62.
  static Field prime(std::uint64_t p);

  constexpr bool is_rational() const noexcept { return p_ == 0; }
  constexpr std::uint64_t modulus() const noexcept { return p_; }

  /// "rational" or "F_p".
  std::string to_string() const;

  friend constexpr bool operator==(Field, Field) noexcept = default;

 private:
  constexpr explicit Field(std::uint64_t p) noexcept : p_(p) {}
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n) noexcept;

/// Exact field element. Rationals are kept in lowest terms with a positive
/// denominator; values that fit in 64 bits stay unboxed and spill into a
/// GMP rational on overflow. Prime-field values are residues in [0, p).
class Scalar {
 public:
  /// Rational zero.
  Scalar() noexcept = default;
  Scalar(Field field, std::int64_t value);

  static Scalar zero(Field field) { return Scalar(field, 0); }
  static Scalar one(Field field) { return Scalar(field, 1); }
  /// num/den reduced into `field`. Throws on a zero (or, in F_p, non-invertible) denominator.
  static Scalar fraction(Field field, const mpz_class& num, const mpz_class& den);

  Scalar(const Scalar& other);
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& other);
  Scalar& operator=(Scalar&&) noexcept = default;
  ~Scalar() = default;

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }

  /// Rational numerator/denominator (for F_p: residue and 1).
  mpz_class numerator() const;
  mpz_class denominator() const;
  /// Residue in [0, p); only meaningful for prime fields.
  std::uint64_t residue() const noexcept { return static_cast<std::uint64_t>(num_); }

  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);

  friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
  friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
  friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
  friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }
  Scalar operator-() const;
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// `p/q`, `p` when q = 1, or `r mod p`.
  std::string to_string() const;

 private:
  void check_same_field(const Scalar& rhs) const;
  void set_big(mpq_class value);
  mpq_class as_mpq() const;

  Field field_;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

/// Parses `-?digits(/digits)?`; in a prime field the optional suffix
/// ` mod p` is accepted when p matches.
Scalar parse_scalar(std::string_view text, Field field);

}  // namespace tsdlink
