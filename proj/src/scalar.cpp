#include "tsdlink/scalar.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace tsdlink {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

bool fits_small(const mpz_class& v) {
  return mpz_fits_slong_p(v.get_mpz_t()) && v != mpz_class(std::numeric_limits<long>::min());
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (p >= (1ull << 62) || !is_prime(p)) {
    throw Error(ErrorCode::invalid_argument, "field modulus " + std::to_string(p) + " is not a prime below 2^62");
  }
  return Field(p);
}

std::string Field::to_string() const {
  return is_rational() ? std::string("rational") : "F_" + std::to_string(p_);
}

Scalar::Scalar(Field field, std::int64_t value) : field_(field) {
  if (field.is_rational()) {
    if (value == std::numeric_limits<std::int64_t>::min()) {
      set_big(mpq_class(mpz_class(static_cast<long>(value))));
    } else {
      num_ = value;
    }
  } else {
    const auto p = static_cast<std::int64_t>(field.modulus());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    num_ = r;
  }
}

Scalar Scalar::fraction(Field field, const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator");
  Scalar out;
  out.field_ = field;
  if (field.is_rational()) {
    mpq_class q(num, den);
    q.canonicalize();
    out.set_big(std::move(q));
    return out;
  }
  const std::uint64_t p = field.modulus();
  const std::uint64_t d = reduce_mod(den, p);
  if (d == 0) {
    throw Error(ErrorCode::division_by_zero, "denominator vanishes modulo " + std::to_string(p));
  }
  const std::uint64_t n = reduce_mod(num, p);
  out.num_ = static_cast<std::int64_t>(mul_mod(n, pow_mod(d, p - 2, p), p));
  return out;
}

Scalar::Scalar(const Scalar& other)
    : field_(other.field_),
      num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    field_ = other.field_;
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

void Scalar::set_big(mpq_class value) {
  if (fits_small(value.get_num()) && fits_small(value.get_den())) {
    num_ = value.get_num().get_si();
    den_ = value.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(std::move(value));
  }
}

mpq_class Scalar::as_mpq() const {
  if (big_) return *big_;
  mpq_class q{mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_))};
  return q;
}

mpz_class Scalar::numerator() const {
  if (big_) return big_->get_num();
  return mpz_class(static_cast<long>(num_));
}

mpz_class Scalar::denominator() const {
  if (big_) return big_->get_den();
  return mpz_class(static_cast<long>(den_));
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (field_ != rhs.field_) {
    throw Error(ErrorCode::field_mismatch,
                "field mismatch: " + field_.to_string() + " vs " + rhs.field_.to_string());
  }
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (!field_.is_rational()) {
    const std::uint64_t p = field_.modulus();
    std::uint64_t s = static_cast<std::uint64_t>(num_) + static_cast<std::uint64_t>(rhs.num_);
    if (s >= p) s -= p;
    num_ = static_cast<std::int64_t>(s);
    return *this;
  }
  if (!big_ && !rhs.big_) {
    if (den_ == 1 && rhs.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, rhs.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    } else {
      std::int64_t a, b, n, d;
      if (!__builtin_mul_overflow(num_, rhs.den_, &a) && !__builtin_mul_overflow(rhs.num_, den_, &b) &&
          !__builtin_add_overflow(a, b, &n) && !__builtin_mul_overflow(den_, rhs.den_, &d) &&
          n != std::numeric_limits<std::int64_t>::min()) {
        const std::int64_t g = std::gcd(n, d);
        num_ = n / g;
        den_ = d / g;
        return *this;
      }
    }
  }
  set_big(as_mpq() + rhs.as_mpq());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (!field_.is_rational()) {
    num_ = static_cast<std::int64_t>(
        mul_mod(static_cast<std::uint64_t>(num_), static_cast<std::uint64_t>(rhs.num_), field_.modulus()));
    return *this;
  }
  if (!big_ && !rhs.big_) {
    const std::int64_t g1 = std::gcd(num_, rhs.den_);
    const std::int64_t g2 = std::gcd(rhs.num_, den_);
    std::int64_t n, d;
    if (num_ == 0 || rhs.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    if (!__builtin_mul_overflow(num_ / g1, rhs.num_ / g2, &n) &&
        !__builtin_mul_overflow(den_ / g2, rhs.den_ / g1, &d) && n != std::numeric_limits<std::int64_t>::min()) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  set_big(as_mpq() * rhs.as_mpq());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

Scalar Scalar::operator-() const {
  Scalar out(*this);
  if (!field_.is_rational()) {
    if (num_ != 0) out.num_ = static_cast<std::int64_t>(field_.modulus()) - num_;
  } else if (big_) {
    out.set_big(-*big_);
  } else {
    out.num_ = -num_;
  }
  return out;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  Scalar out;
  out.field_ = field_;
  if (!field_.is_rational()) {
    const std::uint64_t p = field_.modulus();
    out.num_ = static_cast<std::int64_t>(pow_mod(static_cast<std::uint64_t>(num_), p - 2, p));
  } else if (big_) {
    out.set_big(1 / *big_);
  } else {
    out.num_ = num_ < 0 ? -den_ : den_;
    out.den_ = num_ < 0 ? -num_ : num_;
  }
  return out;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::string Scalar::to_string() const {
  if (!field_.is_rational()) {
    return std::to_string(num_) + " mod " + std::to_string(field_.modulus());
  }
  if (big_) {
    return big_->get_den() == 1 ? big_->get_num().get_str() : big_->get_str();
  }
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Scalar parse_scalar(std::string_view text, Field field) {
  std::string_view body = trim(text);
  if (!field.is_rational()) {
    if (auto pos = body.find(" mod "); pos != std::string_view::npos) {
      std::string_view modulus = trim(body.substr(pos + 5));
      if (!all_digits(modulus) || std::to_string(field.modulus()) != modulus) {
        throw Error(ErrorCode::parse, "scalar literal '" + std::string(text) + "' has the wrong modulus for " +
                                          field.to_string());
      }
      body = trim(body.substr(0, pos));
    }
  }
  std::string_view rest = body;
  bool negative = false;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  std::string_view num_text = rest;
  std::string_view den_text = "1";
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    num_text = rest.substr(0, slash);
    den_text = rest.substr(slash + 1);
  }
  if (!all_digits(num_text) || !all_digits(den_text)) {
    throw Error(ErrorCode::parse, "malformed scalar literal '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_text), 10);
  mpz_class den(std::string(den_text), 10);
  if (negative) num = -num;
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + std::string(text) + "'");
  return Scalar::fraction(field, num, den);
}

}  // namespace tsdlink
