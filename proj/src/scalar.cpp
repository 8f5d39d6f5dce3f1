#include "atm/scalar.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace atm {

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::exact ? "exact" : "float";
}

NumericMode parse_numeric_mode(std::string_view text) {
  if (text == "exact") return NumericMode::exact;
  if (text == "float") return NumericMode::floating;
  throw FormatError(fmt::format("unknown numeric mode '{}'", text));
}

namespace {

bool is_integer_text(std::string_view text) {
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  if (pos == text.size()) return false;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view text) {
  if (!is_integer_text(text)) throw FormatError(fmt::format("not an integer: '{}'", text));
  std::string digits(text.front() == '+' ? text.substr(1) : text);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  mpz_class num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
    throw FormatError(fmt::format("denominator must be an unsigned integer: '{}'", text));
  }
  mpz_class den = parse_integer(den_text);
  if (den == 0) throw FormatError(fmt::format("zero denominator: '{}'", text));
  Rational value(num, den);
  value.canonicalize();
  return value;
}

Rational parse_rational_or_decimal(std::string_view text) {
  if (text.find('/') != std::string_view::npos || is_integer_text(text)) return parse_rational(text);

  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    digits += text[pos];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    for (++pos; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      digits += text[pos];
      --scale;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw FormatError(fmt::format("not a number: '{}'", text));
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    std::string_view exponent = text.substr(pos + 1);
    if (!is_integer_text(exponent) || exponent.size() > 6) {
      throw FormatError(fmt::format("bad exponent in '{}'", text));
    }
    scale += std::strtol(std::string(exponent).c_str(), nullptr, 10);
    pos = text.size();
  }
  if (pos != text.size()) throw FormatError(fmt::format("not a number: '{}'", text));

  mpz_class num(digits, 10);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational value = scale < 0 ? Rational(num, power) : Rational(num * power);
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_double(double value) { return fmt::format("{}", value); }

Scalar::Scalar(double value) : value_(value) {
  if (!std::isfinite(value)) throw FormatError("non-finite floating-point scalar");
}

void Scalar::value_canonicalize() { std::get<Rational>(value_).canonicalize(); }

const Rational& Scalar::exact() const {
  if (auto* r = std::get_if<Rational>(&value_)) return *r;
  throw ModeMismatch("scalar is in float mode, exact value requested");
}

double Scalar::floating() const {
  if (auto* d = std::get_if<double>(&value_)) return *d;
  throw ModeMismatch("scalar is in exact mode, float value requested");
}

double Scalar::to_double() const {
  if (auto* d = std::get_if<double>(&value_)) return *d;
  return std::get<Rational>(value_).get_d();
}

std::string Scalar::to_string() const {
  if (auto* d = std::get_if<double>(&value_)) return format_double(*d);
  return format_rational(std::get<Rational>(value_));
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode()) throw ModeMismatch("comparing exact and float scalars");
  if (a.is_exact()) {
    int c = cmp(a.exact(), b.exact());
    return c < 0 ? std::partial_ordering::less
                 : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
  }
  return a.floating() <=> b.floating();
}

bool operator==(const Scalar& a, const Scalar& b) { return (a <=> b) == 0; }

Scalar parse_scalar(std::string_view text, NumericMode mode) {
  Rational exact = parse_rational_or_decimal(text);
  if (mode == NumericMode::exact) return Scalar(exact);
  if (text.find('/') == std::string_view::npos) {
    return Scalar(std::strtod(std::string(text).c_str(), nullptr));
  }
  return Scalar(exact.get_d());
}

}  // namespace atm
