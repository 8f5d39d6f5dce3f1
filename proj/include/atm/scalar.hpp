#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace atm {

/// Arbitrary-precision rational, always kept in canonical lowest terms.
using Rational = mpq_class;

enum class NumericMode { exact, floating };

std::string_view to_string(NumericMode mode);
NumericMode parse_numeric_mode(std::string_view text);

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed numeric or file text.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An exact and a floating value were combined.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// Parses "num/den" or an integer. The denominator must be positive.
Rational parse_rational(std::string_view text);

/// Parses "num/den", an integer, or a plain decimal such as "0.125" / "1e-3"
/// into the rational it denotes exactly.
Rational parse_rational_or_decimal(std::string_view text);

/// Always "num/den", e.g. "1/4", "1/1", "0/1".
std::string format_rational(const Rational& value);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// A probability-valued number in one of the two numeric modes.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  Scalar(Rational value) : value_(std::move(value)) { value_canonicalize(); }
  Scalar(double value);

  NumericMode mode() const {
    return std::holds_alternative<Rational>(value_) ? NumericMode::exact : NumericMode::floating;
  }
  bool is_exact() const { return mode() == NumericMode::exact; }

  const Rational& exact() const;
  double floating() const;
  /// Lossy view of either mode; exact values are rounded to nearest.
  double to_double() const;

  std::string to_string() const;

  /// Same-mode comparison; throws ModeMismatch otherwise.
  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

 private:
  void value_canonicalize();
  std::variant<Rational, double> value_;
};

/// Parses `text` as a scalar in the requested mode ("1/3" is accepted in
/// float mode and divided out).
Scalar parse_scalar(std::string_view text, NumericMode mode);

}  // namespace atm
