#include "alpha_luroth/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace alpha_luroth {

Word parse_word(std::string_view bits) {
  Word w;
  w.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit word must contain only 0 and 1: " + std::string(bits));
    w.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

std::string word_string(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (auto b : w) s.push_back(static_cast<char>('0' + b));
  return s;
}

SignSpec::SignSpec(Word prefix, TailKind kind, Word period) : prefix_(std::move(prefix)), kind_(kind) {
  for (auto b : prefix_) {
    if (b > 1) throw std::invalid_argument("sign bits must be 0 or 1");
  }
  switch (kind) {
    case TailKind::all_zero: period_ = {0}; break;
    case TailKind::all_one: period_ = {1}; break;
    case TailKind::periodic:
      if (period.empty()) throw std::invalid_argument("periodic sign tail needs a nonempty word");
      for (auto b : period) {
        if (b > 1) throw std::invalid_argument("sign bits must be 0 or 1");
      }
      period_ = std::move(period);
      break;
  }
}

namespace {

SignSpec parse_tail(Word prefix, std::string_view tail) {
  if (tail == "all-zero") return {std::move(prefix), TailKind::all_zero};
  if (tail == "all-one") return {std::move(prefix), TailKind::all_one};
  constexpr std::string_view kPeriod = "period:";
  if (tail.substr(0, kPeriod.size()) == kPeriod) {
    return {std::move(prefix), TailKind::periodic, parse_word(tail.substr(kPeriod.size()))};
  }
  throw std::invalid_argument("unknown sign tail: " + std::string(tail));
}

}  // namespace

SignSpec SignSpec::parse(std::string_view text) {
  constexpr std::string_view kPrefix = "prefix:";
  constexpr std::string_view kTail = ",tail:";
  if (text.substr(0, kPrefix.size()) != kPrefix) return parse_tail({}, text);
  const auto comma = text.find(kTail);
  if (comma == std::string_view::npos) throw std::invalid_argument("sign spec with prefix needs ',tail:'");
  Word prefix = parse_word(text.substr(kPrefix.size(), comma - kPrefix.size()));
  return parse_tail(std::move(prefix), text.substr(comma + kTail.size()));
}

int SignSpec::bit(Index n) const {
  if (n == kInfiniteDigit) return 0;
  if (n < 1) throw std::out_of_range("sign index must be >= 1");
  const auto len = static_cast<Index>(prefix_.size());
  if (n <= len) return prefix_[static_cast<std::size_t>(n - 1)];
  return period_[static_cast<std::size_t>((n - len - 1) % static_cast<Index>(period_.size()))];
}

SignSpec SignSpec::prepended(const Word& omega) const {
  Word prefix = omega;
  prefix.insert(prefix.end(), prefix_.begin(), prefix_.end());
  return {std::move(prefix), kind_, period_};
}

int SignSpec::tail_min_bit() const { return *std::min_element(period_.begin(), period_.end()); }
int SignSpec::tail_max_bit() const { return *std::max_element(period_.begin(), period_.end()); }

std::string SignSpec::to_string() const {
  std::string tail;
  switch (kind_) {
    case TailKind::all_zero: tail = "all-zero"; break;
    case TailKind::all_one: tail = "all-one"; break;
    case TailKind::periodic: tail = "period:" + word_string(period_); break;
  }
  if (prefix_.empty()) return tail;
  return "prefix:" + word_string(prefix_) + ",tail:" + tail;
}

Step apply_T(const Partition& p, const SignSpec& eps, double x) {
  const Index d = p.digit_of(x);
  if (d == kInfiniteDigit) return {0.0, d, 0};
  const int s = eps.bit(d);
  const double a = p.a(d);
  double y = s == 0 ? (x - p.t(d + 1)) / a : (p.t(d) - x) / a;
  y = std::clamp(y, 0.0, 1.0);
  return {y, d, s};
}

namespace {

Index exact_digit(const Partition& p, const Rational& x) {
  if (p.is_luroth()) {
    // x in (1/(n+1), 1/n] exactly when n = floor(1/x).
    mpz_class n;
    mpz_fdiv_q(n.get_mpz_t(), x.get_den_mpz_t(), x.get_num_mpz_t());
    if (!n.fits_slong_p() || n.get_si() > p.max_index()) {
      throw std::out_of_range("digit beyond the representable index range");
    }
    return n.get_si();
  }
  const double approx = to_double(x);
  Index d = approx > 0.0 ? p.digit_of(std::min(approx, 1.0)) : p.max_index();
  while (d > 1 && p.t_exact(d) < x) --d;
  while (!(p.t_exact(d + 1) < x)) {
    ++d;
    if (d > p.max_index()) throw std::out_of_range("digit beyond the representable index range");
  }
  return d;
}

}  // namespace

ExactStep apply_T(const Partition& p, const SignSpec& eps, const Rational& x) {
  if (sgn(x) < 0 || cmp(x, 1) > 0) throw std::domain_error("point outside [0, 1]");
  if (sgn(x) == 0) return {Rational(0), kInfiniteDigit, 0};
  const Index d = exact_digit(p, x);
  const int s = eps.bit(d);
  const Rational a = p.a_exact(d);
  Rational y = s == 0 ? Rational((x - p.t_exact(d + 1)) / a) : Rational((p.t_exact(d) - x) / a);
  y.canonicalize();
  return {y, d, s};
}

ExpansionTrace expand(const Partition& p, const SignSpec& eps, const Rational& x, Index n_steps) {
  if (sgn(x) < 0 || cmp(x, 1) > 0) throw std::domain_error("point outside [0, 1]");
  if (n_steps < 1) throw std::invalid_argument("expand needs n_steps >= 1");
  ExpansionTrace trace;
  trace.x0_exact = x;
  trace.x0 = to_double(x);

  Rational orbit = x;
  Rational product = 1;  // prod_{i<n} a_{d_i}
  Rational approx = 0;
  int parity = 0;       // sum_{i<n} s_i mod 2
  for (Index n = 1; n <= n_steps; ++n) {
    TraceStep step;
    step.n = n;
    if (trace.terminated) {
      step.q = std::numeric_limits<double>::infinity();
      step.approx = to_double(approx);
      trace.steps.push_back(step);
      trace.orbit_exact.emplace_back(0);
      trace.approx_exact.push_back(approx);
      trace.inv_q_exact.emplace_back(0);
      continue;
    }
    const ExactStep st = apply_T(p, eps, orbit);
    if (st.digit == kInfiniteDigit) {
      trace.terminated = true;
      --n;
      continue;
    }
    const Rational inv_q = p.t_exact(st.digit + 1 - st.sign) * product;
    approx += parity == 0 ? inv_q : Rational(-inv_q);
    orbit = st.y;
    product *= p.a_exact(st.digit);
    parity ^= st.sign;

    step.digit = st.digit;
    step.sign = st.sign;
    step.orbit = to_double(orbit);
    step.q = to_double(Rational(1 / inv_q));
    step.approx = to_double(approx);
    step.theta = to_double(Rational(abs(x - approx) / inv_q));
    trace.steps.push_back(step);
    trace.orbit_exact.push_back(orbit);
    trace.approx_exact.push_back(approx);
    trace.inv_q_exact.push_back(inv_q);
    if (sgn(orbit) == 0) trace.terminated = true;
  }
  return trace;
}

ExpansionTrace expand(const Partition& p, const SignSpec& eps, double x, Index n_steps) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("point outside [0, 1]");
  return expand(p, eps, from_double(x), n_steps);
}

double theta_identity_check(const ExpansionTrace& trace, const Partition& p) {
  double worst = 0.0;
  for (const auto& step : trace.steps) {
    double rhs = 0.0;
    if (step.digit != kInfiniteDigit) {
      const Index d = step.digit;
      const Index j = d + 1 - step.sign;
      const double ratio = d <= p.max_index() ? p.a(d) / p.t(j)
                                              : to_double(Rational(p.a_exact(d) / p.t_exact(j)));
      rhs = ratio * step.orbit;
    }
    worst = std::max(worst, std::abs(step.theta - rhs));
  }
  return worst;
}

Rational reconstruct(const Partition& p, const std::vector<Index>& digits, const std::vector<int>& signs) {
  if (digits.size() != signs.size()) throw std::invalid_argument("digits and signs differ in length");
  Rational sum = 0, product = 1;
  int parity = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] == kInfiniteDigit) break;
    const Rational term = p.t_exact(digits[k] + 1 - signs[k]) * product;
    sum += parity == 0 ? term : Rational(-term);
    product *= p.a_exact(digits[k]);
    parity ^= signs[k];
  }
  return sum;
}

}  // namespace alpha_luroth
