#include "alpha_luroth/exact.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace alpha_luroth::exact {

namespace {

constexpr Index kLurothDirectCap = 10000;

bool eventually_geometric(const Partition& p) { return p.geometric_tail().has_value() && p.has_exact_values(); }

Rational power(const Rational& base, Index e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// sum_{n >= first} term(n) for an eventually geometric partition, where
// term(n + block) = ratio^(block / period) * term(n) for n >= periodic_from.
template <class Term>
Rational geometric_series(const Partition& p, Index first, Index periodic_from, Index block, Term&& term) {
  const GeometricTail& tail = *p.geometric_tail();
  const Index k = std::max(first, periodic_from);
  Rational head = 0;
  for (Index n = first; n < k; ++n) head += term(n);
  Rational one_block = 0;
  for (Index n = k; n < k + block; ++n) one_block += term(n);
  const Rational factor = power(tail.ratio, block / tail.period);
  Rational total = head + one_block / (1 - factor);
  total.canonicalize();
  return total;
}

Index sign_period(const SignSpec& eps) { return static_cast<Index>(eps.period().size()); }

// Index from which both rho_n and eps_n repeat with period block.
Index periodic_start(const Partition& p, const SignSpec& eps) {
  return std::max(p.geometric_tail()->head_length, static_cast<Index>(eps.prefix().size())) + 1;
}

Index joint_block(const Partition& p, const SignSpec& eps) {
  return std::lcm(p.geometric_tail()->period, sign_period(eps));
}

// sum_{k >= K} 1/k^2.
ExactValue zeta2_tail(Index k) {
  Rational h2 = 0;
  for (Index j = 1; j < k; ++j) h2 += Rational(1, j * j);
  return {Rational(-h2), Rational(1, 6)};
}

std::optional<int> constant_tail_bit(const SignSpec& eps) {
  const int lo = eps.tail_min_bit();
  if (lo != eps.tail_max_bit()) return std::nullopt;
  return lo;
}

// sum_{n >= K} m_term(n, b) for the Luroth partition.
ExactValue luroth_m_tail(Index k, int b) {
  const ExactValue s = zeta2_tail(k);
  const Rational kk(k);
  if (b == 0) return ExactValue(Rational(3, 2) / kk) - s * Rational(1, 2);
  return ExactValue(Rational(1, 2) / kk - Rational(1, 2) / (kk * kk)) + s * Rational(1, 2);
}

}  // namespace

bool available(const Partition& p) { return p.is_luroth() || eventually_geometric(p); }

Rational f_term(const Partition& p, Index n, int b, const Rational& z) {
  if (sgn(z) <= 0 || cmp(z, 1) > 0) throw std::domain_error("z must lie in (0, 1]");
  const Rational a = p.a_exact(n);
  const Rational t = p.t_exact(n + 1 - b);
  if (a < z * t) return a;
  return t * z;
}

Rational m_term(const Partition& p, Index n, int b) {
  const Rational a = p.a_exact(n);
  const Rational t = p.t_exact(n + 1 - b);
  Rational m = a <= t ? Rational(a - a * a / (2 * t)) : Rational(t / 2);
  m.canonicalize();
  return m;
}

Rational g(const Partition& p, Index k) { return m_term(p, k, 1) - m_term(p, k, 0); }

std::optional<ExactValue> g_tail(const Partition& p, Index first) {
  if (first < 1) throw std::invalid_argument("g_tail needs first >= 1");
  if (p.is_luroth()) {
    // g(k) = 1/(2k^2(k+1)^2) and 1/(k^2(k+1)^2) = 1/k^2 + 1/(k+1)^2 - 2/k + 2/(k+1).
    const Rational k(first);
    return zeta2_tail(first) - ExactValue(Rational(1, 2) / (k * k) + 1 / k);
  }
  if (!eventually_geometric(p)) return std::nullopt;
  const GeometricTail& tail = *p.geometric_tail();
  return ExactValue(geometric_series(p, first, tail.head_length + 1, tail.period, [&](Index k) { return g(p, k); }));
}

std::optional<ExactValue> I(const Partition& p, Index n) {
  if (n < 0) throw std::invalid_argument("I needs n >= 0");
  return g_tail(p, n + 1);
}

std::optional<ExactValue> G(const Partition& p, Index n) {
  if (n < 0) throw std::invalid_argument("G needs n >= 0");
  auto rest = g_tail(p, n + 2);
  if (!rest) return std::nullopt;
  return ExactValue(g(p, n + 1)) - *rest;
}

std::optional<ExactValue> m_tail(const Partition& p, const SignSpec& eps, Index first) {
  if (first < 1) throw std::invalid_argument("m_tail needs first >= 1");
  if (p.is_luroth()) {
    const auto bit = constant_tail_bit(eps);
    if (!bit) return std::nullopt;
    const Index k = std::max(first, static_cast<Index>(eps.prefix().size()) + 1);
    Rational head = 0;
    for (Index n = first; n < k; ++n) head += m_term(p, n, eps.bit(n));
    return ExactValue(head) + luroth_m_tail(k, *bit);
  }
  if (!eventually_geometric(p)) return std::nullopt;
  return ExactValue(geometric_series(p, first, periodic_start(p, eps), joint_block(p, eps),
                                     [&](Index n) { return m_term(p, n, eps.bit(n)); }));
}

std::optional<ExactValue> M(const Partition& p, const SignSpec& eps) {
  auto tail = m_tail(p, eps, 1);
  if (!tail) return std::nullopt;
  return ExactValue(Rational(1)) - *tail;
}

std::optional<ExactValue> F(const Partition& p, const SignSpec& eps, const Rational& z) {
  if (sgn(z) <= 0 || cmp(z, 1) > 0) throw std::domain_error("z must lie in (0, 1]");
  if (p.is_luroth()) {
    // For n >= 1/z both branches saturate at a_n, so the tail is t_N.
    mpz_class n_sat;
    mpz_cdiv_q(n_sat.get_mpz_t(), z.get_den_mpz_t(), z.get_num_mpz_t());
    if (cmp(n_sat, kLurothDirectCap) > 0) return std::nullopt;
    const Index n_star = std::max<Index>(1, n_sat.get_si());
    Rational sum = 0;
    for (Index n = 1; n < n_star; ++n) sum += f_term(p, n, eps.bit(n), z);
    sum += Rational(1, n_star);
    sum.canonicalize();
    return ExactValue(sum);
  }
  if (!eventually_geometric(p)) return std::nullopt;
  return ExactValue(geometric_series(p, 1, periodic_start(p, eps), joint_block(p, eps),
                                     [&](Index n) { return f_term(p, n, eps.bit(n), z); }));
}

}  // namespace alpha_luroth::exact
