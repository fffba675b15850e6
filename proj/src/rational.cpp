#include "pslab/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>

namespace pslab {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9')
      throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
  }
  return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (text.find_first_of(".eE") != std::string_view::npos) {
    throw std::invalid_argument(
        "decimal value '" + std::string(text) +
        "' rejected: exponents must be exact fractions a/b so that floor "
        "boundaries can be certified by integer power comparison");
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text), 1);
  BigInt den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("rational '" + std::string(text) + "' has zero denominator");
  return Rational(parse_integer(text.substr(0, slash), text), std::move(den));
}

double Rational::to_double() const { return static_cast<double>(to_long_double()); }

long double Rational::to_long_double() const {
  using boost::multiprecision::cpp_bin_float_quad;
  cpp_bin_float_quad q = cpp_bin_float_quad(num_) / cpp_bin_float_quad(den_);
  return q.convert_to<long double>();
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational operator+(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.num_, x.den_ * y.den_);
}

Rational operator/(const Rational& x, const Rational& y) {
  if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
  return Rational(x.num_ * y.den_, x.den_ * y.num_);
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  BigInt l = x.num_ * y.den_;
  BigInt r = y.num_ * x.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace pslab
