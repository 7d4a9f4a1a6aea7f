#include "alpha_luroth/rational.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace alpha_luroth {

double to_double(const Rational& q) {
  if (sgn(q) == 0) return 0.0;
  // mpq_get_d truncates toward zero; fix up to round-to-nearest-even.
  const double truncated = q.get_d();
  if (!std::isfinite(truncated)) return truncated;
  const Rational at_truncated = from_double(truncated);
  if (at_truncated == q) return truncated;
  const double away = std::nextafter(
      truncated, sgn(q) > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity());
  if (!std::isfinite(away)) return truncated;
  const Rational mid = (at_truncated + from_double(away)) / 2;
  const int c = cmp(abs(q), abs(mid));
  if (c > 0) return away;
  if (c < 0) return truncated;
  const auto bits = std::bit_cast<std::uint64_t>(truncated);
  return (bits & 1u) == 0 ? truncated : away;
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  Rational r(x);
  r.canonicalize();
  return r;
}

std::optional<Rational> small_rational(double x, long max_den) {
  if (!std::isfinite(x)) return std::nullopt;
  // Walk the continued-fraction convergents of the exact binary value.
  Rational rest = from_double(x);
  mpz_class h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  for (int iter = 0; iter < 64; ++iter) {
    mpz_class a = rest.get_num() / rest.get_den();
    if (sgn(rest) < 0 && a * rest.get_den() != rest.get_num()) a -= 1;  // floor
    const mpz_class h = a * h_prev + h_prev2;
    const mpz_class k = a * k_prev + k_prev2;
    if (cmp(k, max_den) > 0) break;
    Rational candidate(h, k);
    candidate.canonicalize();
    if (to_double(candidate) == x) return candidate;
    const Rational frac = rest - Rational(a);
    if (sgn(frac) == 0) break;
    rest = 1 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

namespace {

Rational parse_decimal(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;  // value = digits * 10^(-scale)
  bool any_digit = false;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number: " + std::string(text));
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const std::string exp_text(text.substr(i));
    if (exp_text.empty()) throw std::invalid_argument("malformed exponent: " + std::string(text));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent: " + std::string(text));
    }
    if (used != exp_text.size()) throw std::invalid_argument("malformed number: " + std::string(text));
    i = text.size();
  }
  if (i != text.size()) throw std::invalid_argument("malformed number: " + std::string(text));
  const long shift = exponent - scale;
  if (shift > 4000 || shift < -4000) throw std::invalid_argument("exponent out of range: " + std::string(text));
  mpz_class num(digits, 10);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational value = shift >= 0 ? Rational(num * pow10) : Rational(num, pow10);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (sgn(den) == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  Rational q = num / den;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

char sign_char(Sign s) {
  switch (s) {
    case Sign::negative: return '-';
    case Sign::zero: return '0';
    case Sign::positive: return '+';
    case Sign::unknown: break;
  }
  return '?';
}

namespace {

struct PiSquaredBracket {
  Rational lo, hi, mid;
  PiSquaredBracket() {
    // pi truncated after 50 decimals; the true value lies strictly inside.
    const Rational pi_lo = parse_rational("3.14159265358979323846264338327950288419716939937510");
    const Rational pi_hi = pi_lo + parse_rational("1e-50");
    lo = pi_lo * pi_lo;
    hi = pi_hi * pi_hi;
    mid = (lo + hi) / 2;
  }
};

const PiSquaredBracket& bracket() {
  static const PiSquaredBracket b;
  return b;
}

}  // namespace

const Rational& pi_squared_lower() { return bracket().lo; }
const Rational& pi_squared_upper() { return bracket().hi; }

Sign ExactValue::sign() const {
  const int sp = sgn(pi2_);
  if (sp == 0) {
    const int s = sgn(rational_);
    return s > 0 ? Sign::positive : (s < 0 ? Sign::negative : Sign::zero);
  }
  const Rational at_lo = rational_ + pi2_ * bracket().lo;
  const Rational at_hi = rational_ + pi2_ * bracket().hi;
  const Rational& lower = sp > 0 ? at_lo : at_hi;
  const Rational& upper = sp > 0 ? at_hi : at_lo;
  if (sgn(lower) > 0) return Sign::positive;
  if (sgn(upper) < 0) return Sign::negative;
  return Sign::unknown;
}

double ExactValue::to_double() const {
  if (pi2_ == 0) return alpha_luroth::to_double(rational_);
  return alpha_luroth::to_double(Rational(rational_ + pi2_ * bracket().mid));
}

ExactValue& ExactValue::operator+=(const ExactValue& o) {
  rational_ += o.rational_;
  pi2_ += o.pi2_;
  return *this;
}

ExactValue& ExactValue::operator-=(const ExactValue& o) {
  rational_ -= o.rational_;
  pi2_ -= o.pi2_;
  return *this;
}

ExactValue& ExactValue::operator*=(const Rational& k) {
  rational_ *= k;
  pi2_ *= k;
  return *this;
}

std::string ExactValue::to_string() const {
  if (pi2_ == 0) return rational_.get_str();
  return rational_.get_str() + " + (" + pi2_.get_str() + ")*pi^2";
}

Sign compare(const ExactValue& a, const ExactValue& b) { return (a - b).sign(); }

}  // namespace alpha_luroth
