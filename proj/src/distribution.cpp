#include "alpha_luroth/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace alpha_luroth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRoundingFactor = 16.0 * std::numeric_limits<double>::epsilon();

void require_z(double z) {
  if (!(z > 0.0 && z <= 1.0)) throw std::domain_error("z must lie in (0, 1]");
}

void require_tol(double tol) {
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
}

// Per-index shapes as functions of rho = rho_n, scaled by a_n:
//   g      = a_n * phi(rho) / 2
//   m_term = a_n * psi_b(rho)
//   f_term = a_n * min(1, z * r_b(rho))
// phi decreases in rho; psi_b and r_b increase, with psi_0 <= psi_1 and
// r_0 <= r_1. Sums of a_n over n > K equal t_{K+1}, so bounds on rho over the
// tail bound each tail sum.
double phi(double rho) { return rho <= 0.5 ? 1.0 + rho - rho / (1.0 - rho) : (1.0 - rho) * (1.0 - rho) / rho; }

double psi(int b, double rho) {
  if (b == 1) return (1.0 + rho) / 2.0;
  return rho >= 0.5 ? (3.0 * rho - 1.0) / (2.0 * rho) : rho / (2.0 * (1.0 - rho));
}

double ratio_r(int b, double rho) {
  if (rho >= 1.0) return kInf;
  return b == 1 ? 1.0 / (1.0 - rho) : rho / (1.0 - rho);
}

struct TailBounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct BitRange {
  int lo = 0;
  int hi = 1;
};

// Bits occurring among eps_n, n > k.
BitRange bits_after(const SignSpec& eps, Index k) {
  BitRange r{eps.tail_min_bit(), eps.tail_max_bit()};
  const auto len = static_cast<Index>(eps.prefix().size());
  for (Index n = k + 1; n <= len; ++n) {
    r.lo = std::min(r.lo, eps.bit(n));
    r.hi = std::max(r.hi, eps.bit(n));
  }
  return r;
}

template <class Term, class Tail>
BoundedValue sum_series(const Partition& p, Index first, Term&& term, Tail&& tail, double tol) {
  require_tol(tol);
  CompensatedSum sum;
  double magnitude = 0.0;
  Index k = first - 1;
  Index next_check = k;
  for (;;) {
    if (k >= next_check) {
      const TailBounds b = tail(k);
      const double half_width = (b.hi - b.lo) / 2.0;
      if (half_width <= tol / 2.0) {
        const double mid = (b.lo + b.hi) / 2.0;
        sum.add(mid);
        const double rounding = kRoundingFactor * (magnitude + std::abs(mid));
        return {sum.value(), half_width + rounding};
      }
      next_check = k + std::max<Index>(1, k / 8);
    }
    if (k + 1 > p.max_index()) {
      throw std::domain_error("tol too small: truncation index exceeds the partition's index range");
    }
    ++k;
    const double v = term(k);
    sum.add(v);
    magnitude += std::abs(v);
  }
}

TailStats stats_after(const Partition& p, Index k) { return p.tail_stats(k, k + 1); }

TailBounds g_tail(const Partition& p, Index k) {
  const TailStats s = stats_after(p, k);
  const double t = p.t(k + 1) / 2.0;
  return {t * phi(s.sup_bound()), t * phi(s.inf_bound())};
}

}  // namespace

double f_term(const Partition& p, Index n, int b, double z) {
  require_z(z);
  const double a = p.a(n);
  const double t = p.t(n + 1 - b);
  return a / t < z ? a : t * z;
}

double m_term(const Partition& p, Index n, int b) {
  const double a = p.a(n);
  const double t = p.t(n + 1 - b);
  if (a <= t) return a - a * a / (2.0 * t);
  return t / 2.0;
}

double g(const Partition& p, Index k) {
  const double a = p.a(k);
  const double t_next = p.t(k + 1);
  if (t_next <= a) return (a - p.rho(k) * t_next) / 2.0;
  return a * a * a / (2.0 * p.t(k) * t_next);
}

BoundedValue F(const Partition& p, const SignSpec& eps, double z, double tol) {
  require_z(z);
  auto term = [&](Index n) { return f_term(p, n, eps.bit(n), z); };
  auto tail = [&](Index k) {
    const TailStats s = stats_after(p, k);
    const BitRange bits = bits_after(eps, k);
    const double t = p.t(k + 1);
    return TailBounds{t * std::min(1.0, z * ratio_r(bits.lo, s.inf_bound())),
                      t * std::min(1.0, z * ratio_r(bits.hi, s.sup_bound()))};
  };
  BoundedValue v = sum_series(p, 1, term, tail, tol);
  v.value = std::clamp(v.value, 0.0, 1.0);
  return v;
}

BoundedValue m_tail(const Partition& p, const SignSpec& eps, Index first, double tol) {
  if (first < 1) throw std::invalid_argument("m_tail needs first >= 1");
  auto term = [&](Index n) { return m_term(p, n, eps.bit(n)); };
  auto tail = [&](Index k) {
    const TailStats s = stats_after(p, k);
    const BitRange bits = bits_after(eps, k);
    const double t = p.t(k + 1);
    return TailBounds{t * psi(bits.lo, s.inf_bound()), t * psi(bits.hi, s.sup_bound())};
  };
  return sum_series(p, first, term, tail, tol);
}

BoundedValue M(const Partition& p, const SignSpec& eps, double tol) {
  const BoundedValue tail = m_tail(p, eps, 1, tol);
  return {1.0 - tail.value, tail.radius + kRoundingFactor};
}

BoundedValue I_length(const Partition& p, Index n, double tol) {
  if (n < 0) throw std::invalid_argument("I_length needs n >= 0");
  return sum_series(
      p, n + 1, [&](Index k) { return g(p, k); }, [&](Index k) { return g_tail(p, k); }, tol);
}

BoundedValue G(const Partition& p, Index n, double tol) {
  if (n < 0) throw std::invalid_argument("G needs n >= 0");
  const double head = g(p, n + 1);
  const BoundedValue rest = I_length(p, n + 1, tol);
  return {head - rest.value, rest.radius + kRoundingFactor * head};
}

std::vector<double> empirical_cdf(const Partition& p, const SignSpec& eps, std::optional<double> x0,
                                  const std::vector<double>& z_grid, Index n_iter, std::uint64_t seed) {
  if (n_iter < 1) throw std::invalid_argument("empirical_cdf needs n_iter >= 1");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1p-53; };
  auto fresh_point = [&] {
    double u = 0.0;
    while (u == 0.0) u = uniform();
    return u;
  };

  double x = x0 ? *x0 : fresh_point();
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("x0 must lie in (0, 1)");

  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(n_iter));
  for (Index n = 0; n < n_iter; ++n) {
    Step st;
    try {
      st = apply_T(p, eps, x);
    } catch (const std::out_of_range&) {
      // Below the smallest tabulated t_n: restart from a fresh point.
      x = fresh_point();
      st = apply_T(p, eps, x);
    }
    if (st.digit == kInfiniteDigit) {
      thetas.push_back(0.0);
      x = fresh_point();
      continue;
    }
    const double a = p.a(st.digit);
    const double cell = std::nextafter(x, 2.0) - x;
    double y = st.y + (st.sign == 0 ? 1.0 : -1.0) * uniform() * cell / a;
    if (y > 1.0) y = 2.0 - y;  // reflect so the fixed point 1 cannot absorb the orbit
    if (y < 0.0) y = -y;
    y = std::clamp(y, 0.0, 1.0);
    thetas.push_back(a / p.t(st.digit + 1 - st.sign) * y);
    x = y;
  }
  std::sort(thetas.begin(), thetas.end());
  std::vector<double> out;
  out.reserve(z_grid.size());
  const double count = static_cast<double>(thetas.size());
  for (double z : z_grid) {
    const auto below = std::lower_bound(thetas.begin(), thetas.end(), z) - thetas.begin();
    out.push_back(static_cast<double>(below) / count);
  }
  return out;
}

}  // namespace alpha_luroth
