#pragma once

#include <optional>

#include "alpha_luroth/dynamics.hpp"
#include "alpha_luroth/partition.hpp"
#include "alpha_luroth/rational.hpp"

/// Exact evaluation of the series in distribution.hpp. Eventually geometric
/// partitions with exact t_n have rational closed forms for every tail; the
/// Luroth partition has closed forms in Q + Q*pi^2 built on
/// sum_{k >= K} 1/k^2 = pi^2/6 - H2(K - 1).
namespace alpha_luroth::exact {

/// True when g, G, I and the constant-tail M have closed forms for p.
bool available(const Partition& p);

Rational f_term(const Partition& p, Index n, int b, const Rational& z);
Rational m_term(const Partition& p, Index n, int b);
Rational g(const Partition& p, Index k);

/// sum_{k >= first} g(k).
std::optional<ExactValue> g_tail(const Partition& p, Index first);
std::optional<ExactValue> I(const Partition& p, Index n);
std::optional<ExactValue> G(const Partition& p, Index n);

/// sum_{n >= first} m_term(n, eps_n). For the Luroth partition only
/// eventually constant sign tails have a closed form.
std::optional<ExactValue> m_tail(const Partition& p, const SignSpec& eps, Index first);
std::optional<ExactValue> M(const Partition& p, const SignSpec& eps);

/// F at a rational z in (0, 1]. For the Luroth partition this needs about
/// 1/z terms and is declined beyond 10^4 of them.
std::optional<ExactValue> F(const Partition& p, const SignSpec& eps, const Rational& z);

}  // namespace alpha_luroth::exact
