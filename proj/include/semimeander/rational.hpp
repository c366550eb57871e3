#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semimeander {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator) {
    if (denominator == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Parses `p`, `-p` or `p/q` (decimal digits only).
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    auto slash = text.find('/');
    auto check_digits = [&](std::string_view digits, bool allow_sign) {
      std::size_t i = 0;
      if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+')) ++i;
      if (i >= digits.size()) fail();
      for (; i < digits.size(); ++i)
        if (digits[i] < '0' || digits[i] > '9') fail();
    };
    std::string_view num = text.substr(0, slash);
    check_digits(num, true);
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    mpz_class d = 1;
    if (slash != std::string_view::npos) {
      std::string_view den = text.substr(slash + 1);
      check_digits(den, false);
      d = mpz_class(std::string(den), 10);
      if (d == 0) throw std::domain_error("rational with zero denominator");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  static std::optional<Rational> try_parse(std::string_view text) {
    try {
      return parse(text);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  const mpq_class& get() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// `p` for integers, otherwise `p/q`.
  std::string str() const {
    if (is_integer()) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  /// Mixed-number rendering: `53 7/8`, `-1 1/2`, `3`, `9/16` -> `9/16`.
  std::string mixed_str() const {
    if (is_integer()) return str();
    mpz_class num = abs(value_.get_num());
    const mpz_class& den = value_.get_den();
    mpz_class whole = num / den;
    mpz_class rest = num % den;
    std::string out = sign() < 0 ? "-" : "";
    if (whole != 0) out += whole.get_str() + " ";
    out += rest.get_str() + "/" + den.get_str();
    return out;
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  std::size_t hash() const {
    auto limb_hash = [](const mpz_class& z) -> std::size_t {
      std::size_t h = static_cast<std::size_t>(mpz_size(z.get_mpz_t())) * 0x9e3779b97f4a7c15ULL;
      if (mpz_size(z.get_mpz_t()) > 0) h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), 0));
      return h ^ static_cast<std::size_t>(sgn(z) + 1);
    };
    return limb_hash(value_.get_num()) * 31 + limb_hash(value_.get_den());
  }

 private:
  mpq_class value_;
};

/// Scalar traits shared by the templated forms and diagrams: everything that
/// differs between exact rationals and machine integers lives here.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational to_rational(const Rational& s) { return s; }
  static std::size_t hash(const Rational& s) { return s.hash(); }
  static std::string str(const Rational& s) { return s.str(); }
  static bool is_zero(const Rational& s) { return s.is_zero(); }
  static bool is_negative(const Rational& s) { return s.sign() < 0; }
};

template <>
struct ScalarTraits<std::int64_t> {
  static Rational to_rational(std::int64_t s) { return Rational(static_cast<long>(s)); }
  static std::size_t hash(std::int64_t s) { return std::hash<std::int64_t>{}(s); }
  static std::string str(std::int64_t s) { return std::to_string(s); }
  static bool is_zero(std::int64_t s) { return s == 0; }
  static bool is_negative(std::int64_t s) { return s < 0; }
};

/// The basepoint weight `m` an LP is normalized by; either a positive rational
/// or the limit m -> infinity.
class BaseWeight {
 public:
  BaseWeight(Rational value) : value_(std::move(value)) {  // NOLINT(google-explicit-constructor)
    if (value_->sign() <= 0) throw std::domain_error("basepoint weight must be positive");
  }
  BaseWeight(long value) : BaseWeight(Rational(value)) {}  // NOLINT(google-explicit-constructor)
  static BaseWeight infinity() { return BaseWeight(); }

  /// Accepts `inf`, `infinity` or a rational.
  static BaseWeight parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    return BaseWeight(Rational::parse(text));
  }

  bool is_infinite() const { return !value_.has_value(); }
  const Rational& value() const {
    if (!value_) throw std::logic_error("infinite basepoint weight has no value");
    return *value_;
  }
  std::string str() const { return value_ ? value_->str() : "inf"; }

  friend bool operator==(const BaseWeight&, const BaseWeight&) = default;
  friend std::strong_ordering operator<=>(const BaseWeight& a, const BaseWeight& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.value_ <=> *b.value_;
  }

 private:
  BaseWeight() = default;
  std::optional<Rational> value_;
};

}  // namespace semimeander

template <>
struct std::hash<semimeander::Rational> {
  std::size_t operator()(const semimeander::Rational& r) const noexcept { return r.hash(); }
};
