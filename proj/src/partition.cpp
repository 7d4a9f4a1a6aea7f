#include "alpha_luroth/partition.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace alpha_luroth {

namespace {

constexpr Index kTableCap = Index{1} << 17;
constexpr Index kLurothMaxIndex = (Index{1} << 53) - 2;
constexpr Index kClosedFormValidation = 10000;
constexpr mp_bitcnt_t kTableBits = 256;

enum class Kind { luroth, eventually_geometric, closed_form };

Rational rational_power(const Rational& base, Index exponent) {
  mpz_class num, den;
  const auto e = static_cast<unsigned long>(exponent);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void require_ratio(const Rational& r, const char* what) {
  if (sgn(r) <= 0 || cmp(r, 1) >= 0) {
    throw std::invalid_argument(std::string(what) + " must lie in (0, 1), got " + r.get_str());
  }
}

}  // namespace

generator::Geometric geometric_from_double(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("geometric ratio must lie in (0, 1)");
  }
  if (auto small = small_rational(ratio)) return {*small};
  return {from_double(ratio)};
}

struct Partition::Impl {
  Generator gen;
  Kind kind = Kind::eventually_geometric;
  std::optional<GeometricTail> tail;
  std::vector<Rational> head;      // exact t_1..t_L
  std::vector<double> t_table;     // t_1..t_N
  std::vector<double> a_table;     // a_1..a_{N-1}
  std::vector<double> rho_table;   // rho_1..rho_{L+P}
  Index max_index = 0;
  generator::ClosedForm closed;

  void build_geometric(std::vector<Rational> head_values, Index period, Rational ratio) {
    head = std::move(head_values);
    tail = GeometricTail{static_cast<Index>(head.size()), period, std::move(ratio)};
    const Index L = tail->head_length;
    const Index P = tail->period;

    std::vector<mpf_class> t_hp;
    t_hp.reserve(1024);
    const mpf_class c(tail->ratio, kTableBits);
    for (Index n = 1;; ++n) {
      mpf_class value(0, kTableBits);
      if (n <= L) {
        value = mpf_class(head[static_cast<std::size_t>(n - 1)], kTableBits);
      } else {
        value = c * t_hp[static_cast<std::size_t>(n - 1 - P)];
      }
      const double as_double = to_double(Rational(value));
      if (as_double < std::numeric_limits<double>::min() || n > kTableCap + 1) break;
      t_hp.push_back(value);
      t_table.push_back(as_double);
    }
    for (std::size_t i = 0; i + 1 < t_hp.size(); ++i) {
      const mpf_class diff = t_hp[i] - t_hp[i + 1];
      a_table.push_back(to_double(Rational(diff)));
    }
    max_index = static_cast<Index>(t_table.size()) - 1;
    for (Index n = 1; n <= L + P; ++n) {
      rho_table.push_back(to_double(Rational(exact_t(n + 1) / exact_t(n))));
    }
  }

  Rational exact_t(Index n) const {
    switch (kind) {
      case Kind::luroth: return Rational(1, n);
      case Kind::closed_form: return from_double(closed.t(n));
      case Kind::eventually_geometric: break;
    }
    const Index L = tail->head_length;
    const Index P = tail->period;
    if (n <= L) return head[static_cast<std::size_t>(n - 1)];
    const Index steps = (n - L + P - 1) / P;
    return rational_power(tail->ratio, steps) * head[static_cast<std::size_t>(n - steps * P - 1)];
  }

  double rho_any(Index n) const {
    switch (kind) {
      case Kind::luroth: return static_cast<double>(n) / static_cast<double>(n + 1);
      case Kind::closed_form: return closed.t(n + 1) / closed.t(n);
      case Kind::eventually_geometric: break;
    }
    const Index L = tail->head_length;
    const Index P = tail->period;
    if (n > L + P) n = L + 1 + (n - L - 1) % P;
    return rho_table[static_cast<std::size_t>(n - 1)];
  }
};

Partition::Partition(Generator gen) {
  auto impl = std::make_shared<Impl>();
  impl->gen = gen;
  std::visit(
      [&](const auto& g) {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, generator::Luroth>) {
          impl->kind = Kind::luroth;
          impl->max_index = kLurothMaxIndex;
        } else if constexpr (std::is_same_v<G, generator::Dyadic>) {
          impl->build_geometric({Rational(1)}, 1, Rational(1, 2));
        } else if constexpr (std::is_same_v<G, generator::Geometric>) {
          require_ratio(g.ratio, "geometric ratio");
          impl->build_geometric({Rational(1)}, 1, g.ratio);
        } else if constexpr (std::is_same_v<G, generator::TwoPeriodic>) {
          require_ratio(g.ratio, "two-periodic ratio");
          require_ratio(g.even_factor, "two-periodic even factor");
          if (cmp(g.ratio, g.even_factor) >= 0) {
            throw std::invalid_argument("two-periodic partition needs ratio < even_factor");
          }
          impl->build_geometric({Rational(1), g.even_factor}, 2, g.ratio);
        } else if constexpr (std::is_same_v<G, generator::Table>) {
          if (g.values.empty() || g.values.front() != 1.0) {
            throw std::invalid_argument("table partition must start with t_1 = 1");
          }
          std::vector<Rational> head;
          for (std::size_t i = 0; i < g.values.size(); ++i) {
            const double v = g.values[i];
            if (!(v > 0.0) || !std::isfinite(v) || (i > 0 && !(v < g.values[i - 1]))) {
              throw std::invalid_argument("table partition must be positive and strictly decreasing");
            }
            head.push_back(from_double(v));
          }
          if (!(g.tail_ratio > 0.0 && g.tail_ratio < 1.0)) {
            throw std::invalid_argument("table tail_ratio must lie in (0, 1)");
          }
          impl->build_geometric(std::move(head), 1, from_double(g.tail_ratio));
        } else {
          static_assert(std::is_same_v<G, generator::ClosedForm>);
          if (!g.t) throw std::invalid_argument("closed-form partition needs a function");
          if (g.max_index < 1) throw std::invalid_argument("closed-form max_index must be >= 1");
          impl->kind = Kind::closed_form;
          impl->closed = g;
          impl->max_index = g.max_index;
          if (g.t(1) != 1.0) throw std::invalid_argument("closed-form partition must have t_1 = 1");
          const Index check = std::min(g.max_index + 1, kClosedFormValidation);
          double prev = 1.0;
          for (Index n = 2; n <= check; ++n) {
            const double v = g.t(n);
            if (!(v > 0.0) || !(v < prev)) {
              throw std::invalid_argument("closed-form partition is not positive and strictly decreasing at n = " +
                                          std::to_string(n));
            }
            prev = v;
          }
        }
      },
      gen);
  impl_ = std::move(impl);
}

double Partition::t(Index n) const {
  if (n < 1 || n > impl_->max_index + 1) {
    throw std::out_of_range("t index " + std::to_string(n) + " outside [1, " +
                            std::to_string(impl_->max_index + 1) + "]");
  }
  switch (impl_->kind) {
    case Kind::luroth: return 1.0 / static_cast<double>(n);
    case Kind::closed_form: return impl_->closed.t(n);
    case Kind::eventually_geometric: break;
  }
  return impl_->t_table[static_cast<std::size_t>(n - 1)];
}

double Partition::a(Index n) const {
  if (n < 1 || n > impl_->max_index) {
    throw std::out_of_range("a index " + std::to_string(n) + " outside [1, " + std::to_string(impl_->max_index) +
                            "]");
  }
  switch (impl_->kind) {
    case Kind::luroth: {
      const double d = static_cast<double>(n);
      return 1.0 / (d * (d + 1.0));
    }
    case Kind::closed_form: return impl_->closed.t(n) - impl_->closed.t(n + 1);
    case Kind::eventually_geometric: break;
  }
  return impl_->a_table[static_cast<std::size_t>(n - 1)];
}

double Partition::rho(Index n) const {
  if (n < 1 || n > impl_->max_index) {
    throw std::out_of_range("rho index " + std::to_string(n) + " outside [1, " +
                            std::to_string(impl_->max_index) + "]");
  }
  return impl_->rho_any(n);
}

Rational Partition::t_exact(Index n) const {
  if (n < 1) throw std::out_of_range("t index must be >= 1");
  if (impl_->kind == Kind::closed_form && n > impl_->max_index + 1) {
    throw std::out_of_range("t index beyond closed-form range");
  }
  return impl_->exact_t(n);
}

bool Partition::has_exact_values() const {
  return impl_->kind != Kind::closed_form;
}

Index Partition::max_index() const { return impl_->max_index; }

TailStats Partition::tail_stats(Index k, Index horizon) const {
  if (horizon <= k) throw std::invalid_argument("tail_stats: horizon must exceed k");
  if (k < 0) throw std::invalid_argument("tail_stats: k must be >= 0");
  TailStats stats;
  stats.k = k;
  switch (impl_->kind) {
    case Kind::eventually_geometric: {
      const Index end = std::max(k, impl_->tail->head_length) + impl_->tail->period;
      double lo = 1.0, hi = 0.0;
      for (Index n = k + 1; n <= end; ++n) {
        const double r = impl_->rho_any(n);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      stats.m_k = lo;
      stats.s_k = hi;
      stats.certified = stats.sup_certified = stats.inf_certified = true;
      stats.note = "rho_n eventually periodic";
      return stats;
    }
    case Kind::luroth: {
      stats.m_k = impl_->rho_any(k + 1);
      stats.s_k = impl_->rho_any(horizon);
      stats.inf_certified = true;
      stats.note = "rho_n = n/(n+1) increases to 1; sup not attained";
      return stats;
    }
    case Kind::closed_form: break;
  }
  const Index end = std::min(horizon, impl_->max_index);
  double lo = 1.0, hi = 0.0;
  for (Index n = k + 1; n <= end; ++n) {
    const double r = impl_->rho_any(n);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  stats.m_k = lo;
  stats.s_k = hi;
  stats.note = "sampled over (" + std::to_string(k) + ", " + std::to_string(end) + "]";
  return stats;
}

const std::optional<GeometricTail>& Partition::geometric_tail() const { return impl_->tail; }

bool Partition::is_luroth() const { return impl_->kind == Kind::luroth; }

const Generator& Partition::generator() const { return impl_->gen; }

std::string Partition::name() const {
  return std::visit(
      [](const auto& g) -> std::string {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, generator::Luroth>) {
          return "luroth";
        } else if constexpr (std::is_same_v<G, generator::Dyadic>) {
          return "dyadic";
        } else if constexpr (std::is_same_v<G, generator::Geometric>) {
          return "geometric(" + g.ratio.get_str() + ")";
        } else if constexpr (std::is_same_v<G, generator::TwoPeriodic>) {
          return "two_periodic(" + g.ratio.get_str() + "," + g.even_factor.get_str() + ")";
        } else if constexpr (std::is_same_v<G, generator::Table>) {
          std::ostringstream os;
          os.precision(17);
          os << "table(" << g.values.size() << " values, tail_ratio " << g.tail_ratio << ")";
          return os.str();
        } else {
          return g.label;
        }
      },
      impl_->gen);
}

Index Partition::digit_of(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("point outside [0, 1]");
  if (x == 0.0) return kInfiniteDigit;
  const Index max = impl_->max_index;
  if (!(t(max + 1) < x)) throw std::out_of_range("digit beyond the representable index range");
  // Digit d satisfies t(d + 1) < x <= t(d); the predicate t(n + 1) < x is
  // monotone in n, so search for its first true index.
  Index lo = 1, hi = 1;
  if (impl_->kind == Kind::luroth) {
    const double guess = std::floor(1.0 / x);
    hi = std::clamp<Index>(static_cast<Index>(std::min(guess, 9.0e15)), 1, max);
    lo = std::max<Index>(1, hi - 2);
    hi = std::min(max, hi + 2);
    if (!(t(hi + 1) < x)) hi = max;
    if (t(lo + 1) < x) hi = lo;
  } else {
    while (!(t(hi + 1) < x)) {
      lo = hi + 1;
      hi = std::min(max, hi * 2);
    }
  }
  while (lo < hi) {
    const Index mid = lo + (hi - lo) / 2;
    if (t(mid + 1) < x) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace alpha_luroth
