#include "cvlab/rational.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "cvlab/error.hpp"

namespace cvlab {

namespace {

mpz_class from_int64(std::int64_t v) {
  // mpz_class has no int64 constructor on every platform; go through strings
  // only when the value does not fit in a long.
  if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max()) {
    return mpz_class(static_cast<long>(v));
  }
  return mpz_class(std::to_string(v));
}

}  // namespace

ExactRational::ExactRational(std::int64_t value) : value_(from_int64(value)) {}

ExactRational::ExactRational(std::int64_t numerator, std::int64_t denominator)
    : ExactRational(from_int64(numerator), from_int64(denominator)) {}

ExactRational::ExactRational(const mpz_class& integer) : value_(integer) {}

ExactRational::ExactRational(const mpz_class& numerator, const mpz_class& denominator) {
  require(sgn(denominator) != 0, "denominator must be nonzero");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

ExactRational::ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

ExactRational ExactRational::dyadic(const mpz_class& numerator, unsigned long exponent) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, exponent);
  return ExactRational(numerator, den);
}

ExactRational ExactRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string num(text.substr(0, slash));
  const std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  mpz_class n, d;
  if (num.empty() || den.empty() || n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0) {
    throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
  }
  return ExactRational(n, d);
}

std::string ExactRational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

double ExactRational::to_double() const { return value_.get_d(); }

long double log_of(const mpz_class& value) {
  if (sgn(value) <= 0) return -std::numeric_limits<long double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  // Mantissa keeps 53 bits; the remaining relative error is ~1e-16, i.e. an
  // absolute log error of ~1e-16 independent of magnitude.
  return std::log(static_cast<long double>(mantissa)) +
         static_cast<long double>(exponent) * std::numbers::ln2_v<long double>;
}

long double ExactRational::log() const {
  require(sign() >= 0, "log of a negative rational");
  if (is_zero()) return -std::numeric_limits<long double>::infinity();
  return log_of(value_.get_num()) - log_of(value_.get_den());
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  require(!rhs.is_zero(), "division by zero");
  value_ /= rhs.value_;
  return *this;
}

ExactRational operator-(const ExactRational& value) { return ExactRational(mpq_class(-value.value_)); }

ExactRational abs(const ExactRational& value) { return value.sign() < 0 ? -value : value; }

std::ostream& operator<<(std::ostream& os, const ExactRational& value) { return os << value.to_string(); }

}  // namespace cvlab
