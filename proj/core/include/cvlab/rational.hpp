#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace cvlab {

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator. Serializes losslessly as "num/den".
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExactRational(std::int64_t numerator, std::int64_t denominator);
  explicit ExactRational(const mpz_class& integer);
  ExactRational(const mpz_class& numerator, const mpz_class& denominator);
  explicit ExactRational(const mpq_class& value);

  /// num / 2^exponent, the shape of every probability over 2^n label vectors.
  static ExactRational dyadic(const mpz_class& numerator, unsigned long exponent);

  /// Parses "num/den" or a bare integer. Throws InvalidArgument on malformed
  /// input or a zero denominator.
  static ExactRational parse(std::string_view text);

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] double to_double() const;
  /// Natural log in extended precision; -inf for zero. Requires value >= 0.
  [[nodiscard]] long double log() const;

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] int sign() const { return sgn(value_); }

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational lhs, const ExactRational& rhs) { return lhs += rhs; }
  friend ExactRational operator-(ExactRational lhs, const ExactRational& rhs) { return lhs -= rhs; }
  friend ExactRational operator*(ExactRational lhs, const ExactRational& rhs) { return lhs *= rhs; }
  friend ExactRational operator/(ExactRational lhs, const ExactRational& rhs) { return lhs /= rhs; }
  friend ExactRational operator-(const ExactRational& value);

  friend bool operator==(const ExactRational& lhs, const ExactRational& rhs) {
    return cmp(lhs.value_, rhs.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const ExactRational& lhs, const ExactRational& rhs) {
    const int c = cmp(lhs.value_, rhs.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

ExactRational abs(const ExactRational& value);

std::ostream& operator<<(std::ostream& os, const ExactRational& value);

/// ln of a positive big integer in extended precision.
long double log_of(const mpz_class& value);

}  // namespace cvlab
