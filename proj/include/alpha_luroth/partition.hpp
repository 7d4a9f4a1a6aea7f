#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alpha_luroth/rational.hpp"

namespace alpha_luroth {

using Index = std::int64_t;

/// Digit of the point 0, which lives in the singleton A_inf.
inline constexpr Index kInfiniteDigit = std::numeric_limits<Index>::max();

namespace generator {

/// t_n = 1/n.
struct Luroth {};

/// t_n = 2^(1-n).
struct Dyadic {};

/// t_n = ratio^(n-1).
struct Geometric {
  Rational ratio;
};

/// t_{2m+1} = ratio^m and t_{2m+2} = even_factor * ratio^m, m >= 0.
/// Requires 0 < ratio < even_factor < 1.
struct TwoPeriodic {
  Rational ratio;
  Rational even_factor;
};

/// Arbitrary t_n given by a function. No exact arithmetic is available and
/// tail statistics are only ever sampled.
struct ClosedForm {
  std::function<double(Index)> t;
  Index max_index = 1'000'000;
  std::string label = "closed_form";
};

/// Explicit t_1..t_K followed by t_{n+1} = tail_ratio * t_n for n >= K.
struct Table {
  std::vector<double> values;
  double tail_ratio = 0.5;
};

}  // namespace generator

using Generator = std::variant<generator::Luroth, generator::Dyadic, generator::Geometric,
                               generator::TwoPeriodic, generator::ClosedForm, generator::Table>;

/// Geometric generator from a double: a small rational that rounds to `ratio`
/// is preferred (0.4 becomes 2/5), otherwise the exact binary value is used.
generator::Geometric geometric_from_double(double ratio);

/// Exact eventually-geometric shape: t_n = ratio * t_{n - period} for every
/// n > head_length. Every built-in generator except Luroth and ClosedForm has one.
struct GeometricTail {
  Index head_length = 1;
  Index period = 1;
  Rational ratio;
};

/// Extremes of rho_n over n > k.
struct TailStats {
  Index k = 0;
  double s_k = 1.0;  // sup
  double m_k = 0.0;  // inf
  bool certified = false;
  bool sup_certified = false;
  bool inf_certified = false;
  std::string note;

  /// Valid upper bound on every rho_n, n > k.
  double sup_bound() const { return sup_certified ? s_k : 1.0; }
  /// Valid lower bound on every rho_n, n > k.
  double inf_bound() const { return inf_certified ? m_k : 0.0; }
};

/// An alpha-Luroth partition {(t_{n+1}, t_n] : n >= 1} of (0, 1].
/// Immutable; copies share state.
class Partition {
 public:
  static constexpr int kPrecisionDigits = 15;

  /// Validates the generator and precomputes tables. Throws
  /// std::invalid_argument when t_1 != 1, the sequence is not strictly
  /// decreasing, or a ratio is outside (0, 1).
  explicit Partition(Generator generator);

  /// Valid for 1 <= n <= max_index() + 1.
  double t(Index n) const;
  /// Valid for 1 <= n <= max_index().
  double a(Index n) const;
  double rho(Index n) const;

  /// Exact t_n. For ClosedForm this is the binary value of t(n).
  Rational t_exact(Index n) const;
  Rational a_exact(Index n) const { return t_exact(n) - t_exact(n + 1); }

  /// True when t_exact is the generator's mathematical value rather than a
  /// rounded one.
  bool has_exact_values() const;

  /// Largest n with t(n + 1) a positive normal double (or the table cap).
  Index max_index() const;

  /// Exact for eventually periodic rho (certified); for monotone rho the
  /// attained side is certified; otherwise sampled over (k, horizon].
  /// Throws std::invalid_argument unless horizon > k.
  TailStats tail_stats(Index k, Index horizon) const;

  const std::optional<GeometricTail>& geometric_tail() const;
  bool is_luroth() const;
  const Generator& generator() const;
  std::string name() const;

  /// Unique n with x in (t_{n+1}, t_n], or kInfiniteDigit for x == 0, using
  /// the half-open rule on the represented doubles.
  Index digit_of(double x) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

inline Partition make_partition(Generator generator) { return Partition(std::move(generator)); }

}  // namespace alpha_luroth
