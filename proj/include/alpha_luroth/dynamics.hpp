#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "alpha_luroth/partition.hpp"
#include "alpha_luroth/rational.hpp"

namespace alpha_luroth {

/// Finite word over {0, 1}, stored one bit per byte.
using Word = std::vector<std::uint8_t>;

/// Parses a string of '0'/'1' characters. Throws std::invalid_argument.
Word parse_word(std::string_view bits);
std::string word_string(const Word& w);

enum class TailKind { all_zero, all_one, periodic };

/// Infinite sign sequence: a finite prefix followed by a repeated tail.
class SignSpec {
 public:
  SignSpec() = default;
  SignSpec(Word prefix, TailKind kind, Word period = {});

  static SignSpec all_zero() { return {{}, TailKind::all_zero}; }
  static SignSpec all_one() { return {{}, TailKind::all_one}; }
  static SignSpec periodic(Word period) { return {{}, TailKind::periodic, std::move(period)}; }

  /// Accepts "all-zero", "all-one", "period:BITS" and
  /// "prefix:BITS,tail:all-zero|all-one|period:BITS".
  static SignSpec parse(std::string_view text);

  /// epsilon_n for n >= 1; the infinite digit has sign 0.
  int bit(Index n) const;

  /// The sequence omega followed by this one.
  SignSpec prepended(const Word& omega) const;

  const Word& prefix() const { return prefix_; }
  TailKind tail_kind() const { return kind_; }
  /// Repeating block of the tail ("0" or "1" for the constant tails).
  const Word& period() const { return period_; }

  /// Smallest and largest bit occurring among epsilon_n, n > prefix length.
  int tail_min_bit() const;
  int tail_max_bit() const;

  std::string to_string() const;

 private:
  Word prefix_;
  TailKind kind_ = TailKind::all_zero;
  Word period_{0};
};

struct Step {
  double y = 0.0;
  Index digit = kInfiniteDigit;
  int sign = 0;
};

/// One application of T_eps. The half-open rule is applied to the
/// represented value of x. Throws std::domain_error for x outside [0, 1].
Step apply_T(const Partition& p, const SignSpec& eps, double x);

struct ExactStep {
  Rational y;
  Index digit = kInfiniteDigit;
  int sign = 0;
};

/// apply_T on an exact rational point using the exact t_n.
ExactStep apply_T(const Partition& p, const SignSpec& eps, const Rational& x);

struct TraceStep {
  Index n = 0;
  Index digit = kInfiniteDigit;
  int sign = 0;
  double orbit = 0.0;   // T^n(x)
  double q = 0.0;       // +inf once the orbit has terminated
  double approx = 0.0;  // p_n / q_n
  double theta = 0.0;
};

struct ExpansionTrace {
  double x0 = 0.0;
  Rational x0_exact;
  std::vector<TraceStep> steps;
  bool terminated = false;

  // Exact counterparts of orbit, approx and 1/q_n, one per step.
  std::vector<Rational> orbit_exact;
  std::vector<Rational> approx_exact;
  std::vector<Rational> inv_q_exact;
};

/// Exact expansion of a rational point. Throws std::domain_error for x outside
/// [0, 1] and std::invalid_argument for n_steps < 1.
ExpansionTrace expand(const Partition& p, const SignSpec& eps, const Rational& x, Index n_steps);
/// Expansion of the exact binary value of x.
ExpansionTrace expand(const Partition& p, const SignSpec& eps, double x, Index n_steps);

/// max_n |theta_n - (a_{d_n} / t_{d_n + 1 - s_n}) * orbit_n|.
double theta_identity_check(const ExpansionTrace& trace, const Partition& p);

/// Partial sum of the expansion series for the given digits and signs.
Rational reconstruct(const Partition& p, const std::vector<Index>& digits, const std::vector<int>& signs);

}  // namespace alpha_luroth
