#include "ftkc/rational.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <string>

namespace ftkc {

namespace {

Integer pow10(unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    const std::string_view exp_text = text.substr(e + 1);
    const char* first = exp_text.data();
    const char* last = exp_text.data() + exp_text.size();
    if (!exp_text.empty() && exp_text.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("malformed exponent in number: " + std::string(text));
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fraction_digits = 0;
  bool seen_point = false;
  for (const char c : mantissa) {
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("malformed number: " + std::string(text));
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++fraction_digits;
    } else {
      throw std::invalid_argument("malformed number: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number: " + std::string(text));

  Rational value(Integer(digits, 10));
  const long shift = exponent - fraction_digits;
  if (shift > 0) {
    value *= Rational(pow10(static_cast<unsigned long>(shift)));
  } else if (shift < 0) {
    value /= Rational(pow10(static_cast<unsigned long>(-shift)));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    Rational value = num / den;
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format double");
  const std::string_view text(buffer, static_cast<std::size_t>(ptr - buffer));
  if (text.find_first_of("in") != std::string_view::npos) {
    throw std::invalid_argument("non-finite number");
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& value) {
  Integer den = value.get_den();
  unsigned long twos = 0;
  unsigned long fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return value.get_str();
  if (value.get_den() == 1) return value.get_num().get_str();

  const unsigned long places = std::max(twos, fives);
  const Integer scaled_num = value.get_num() * pow10(places) / value.get_den();
  Integer magnitude = abs(scaled_num);
  std::string digits = magnitude.get_str();
  if (digits.size() <= places) digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  return (scaled_num < 0 ? "-" : "") + digits;
}

bool is_integral(const Rational& value) { return value.get_den() == 1; }

Integer common_denominator(std::span<const Rational> values) {
  Integer result = 1;
  for (const Rational& v : values) {
    mpz_lcm(result.get_mpz_t(), result.get_mpz_t(), v.get_den_mpz_t());
  }
  return result;
}

std::optional<Rational> exact_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  if (!mpz_perfect_square_p(value.get_num_mpz_t()) || !mpz_perfect_square_p(value.get_den_mpz_t())) {
    return std::nullopt;
  }
  Integer num;
  Integer den;
  mpz_sqrt(num.get_mpz_t(), value.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), value.get_den_mpz_t());
  return Rational(num, den);
}

}  // namespace ftkc
