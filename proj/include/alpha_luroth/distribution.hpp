#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "alpha_luroth/bounded_value.hpp"
#include "alpha_luroth/dynamics.hpp"
#include "alpha_luroth/partition.hpp"

namespace alpha_luroth {

/// a_n if a_n / t_{n+1-b} < z, else t_{n+1-b} * z. Throws std::domain_error
/// for z outside (0, 1].
double f_term(const Partition& p, Index n, int b, double z);

/// Integral of f_term(p, n, b, .) over [0, 1].
double m_term(const Partition& p, Index n, int b);

/// g(k) = m_term(k, 1) - m_term(k, 0), evaluated in a cancellation-free form.
double g(const Partition& p, Index k);

// The series below stop once the certified enclosure of the omitted tail is
// narrower than tol. The enclosure is never weaker than the generic bounds
// (t_{K+1} for F and M, t_{K+1}/2 for G and I) and is sharpened with the
// certified sides of tail_stats. The radius also covers accumulated rounding.
// All throw std::domain_error when tol would need indices beyond max_index().

BoundedValue F(const Partition& p, const SignSpec& eps, double z, double tol);
BoundedValue M(const Partition& p, const SignSpec& eps, double tol);
BoundedValue G(const Partition& p, Index n, double tol);
BoundedValue I_length(const Partition& p, Index n, double tol);

/// Sum of m_term(n, eps_n) over n >= first.
BoundedValue m_tail(const Partition& p, const SignSpec& eps, Index first, double tol);

/// Fraction of n <= n_iter with theta_n < z along one pseudo-orbit, for each z.
/// The orbit is iterated in double precision; after each step the image is
/// spread uniformly over the rounding cell of its preimage so that the
/// finite-precision orbit does not collapse onto a periodic cycle. x0 is drawn
/// uniformly when absent. Deterministic for a given seed.
std::vector<double> empirical_cdf(const Partition& p, const SignSpec& eps, std::optional<double> x0,
                                  const std::vector<double>& z_grid, Index n_iter, std::uint64_t seed);

}  // namespace alpha_luroth
