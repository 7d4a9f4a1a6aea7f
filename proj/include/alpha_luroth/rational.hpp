#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace alpha_luroth {

using Rational = mpq_class;

/// Correctly rounded (round-half-even) conversion to double.
double to_double(const Rational& q);

/// Exact binary value of a finite double.
Rational from_double(double x);

/// First continued-fraction convergent of x (denominator <= max_den) whose
/// correctly rounded double equals x, if one exists.
std::optional<Rational> small_rational(double x, long max_den = 1000000);

/// Parses "p/q", an integer, or a plain decimal such as "0.4" (read exactly
/// as 2/5). Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

enum class Sign { negative, zero, positive, unknown };

char sign_char(Sign s);

/// Exact value of the form r + p * pi^2 with rational r and p.  Closed-form
/// zeta(2) tails of the Luroth partition live in this field; for the other
/// rational partitions p stays 0.
class ExactValue {
 public:
  ExactValue() = default;
  ExactValue(Rational rational_part) : rational_(std::move(rational_part)) {}  // NOLINT
  ExactValue(Rational rational_part, Rational pi2_part)
      : rational_(std::move(rational_part)), pi2_(std::move(pi2_part)) {}

  static ExactValue pi_squared() { return {Rational(0), Rational(1)}; }

  const Rational& rational_part() const { return rational_; }
  const Rational& pi2_part() const { return pi2_; }
  bool is_rational() const { return pi2_ == 0; }

  /// Sign using a 50-digit rational enclosure of pi^2.  `unknown` is only
  /// possible when the value sits within ~1e-48 relative of zero.
  Sign sign() const;
  double to_double() const;

  ExactValue& operator+=(const ExactValue& o);
  ExactValue& operator-=(const ExactValue& o);
  ExactValue& operator*=(const Rational& k);

  friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
  friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
  friend ExactValue operator*(ExactValue a, const Rational& k) { return a *= k; }
  friend ExactValue operator*(const Rational& k, ExactValue a) { return a *= k; }
  friend ExactValue operator-(ExactValue a) { return a *= Rational(-1); }
  friend bool operator==(const ExactValue& a, const ExactValue& b) {
    return a.rational_ == b.rational_ && a.pi2_ == b.pi2_;
  }

  std::string to_string() const;

 private:
  Rational rational_{0};
  Rational pi2_{0};
};

/// Sign of (a - b); `unknown` when undecidable at the pi^2 enclosure.
Sign compare(const ExactValue& a, const ExactValue& b);

/// Rational bracket [lo, hi] of pi^2 with hi - lo < 1e-48.
const Rational& pi_squared_lower();
const Rational& pi_squared_upper();

}  // namespace alpha_luroth
