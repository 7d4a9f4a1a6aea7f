#include "alpha_luroth/mset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "alpha_luroth/distribution.hpp"
#include "alpha_luroth/exact.hpp"

namespace alpha_luroth {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Margin applied to the floating-point tests of the tail conditions.
constexpr double kConditionMargin = 1e-12;
// Largest depth rendered with exact endpoints.
constexpr Index kExactDepthLimit = 12;
// Largest level merged explicitly when counting a finite union.
constexpr Index kCountDepthLimit = 16;
constexpr Index kMinScan = 64;

struct Endpoint {
  double value = 0.0;
  double radius = 0.0;
  const ExactValue* exact = nullptr;
};

Endpoint lo_of(const LabeledInterval& iv) { return {iv.lo.value, iv.lo.radius, iv.lo_exact ? &*iv.lo_exact : nullptr}; }
Endpoint hi_of(const LabeledInterval& iv) { return {iv.hi.value, iv.hi.radius, iv.hi_exact ? &*iv.hi_exact : nullptr}; }

// Certified sign of a - b.
Sign difference_sign(const Endpoint& a, const Endpoint& b) {
  if (a.exact && b.exact) return compare(*a.exact, *b.exact);
  return BoundedValue{a.value - b.value, a.radius + b.radius + 4.0 * kEps * (std::abs(a.value) + std::abs(b.value))}
      .sign();
}

ExactValue one() { return ExactValue(Rational(1)); }

std::vector<LabeledInterval> build_intervals(const Partition& p, Index depth, double tol, bool& exact_out) {
  const Index n_words = Index{1} << depth;
  std::vector<LabeledInterval> out(static_cast<std::size_t>(n_words));

  std::optional<ExactValue> tail_one, tail_zero;
  if (depth <= kExactDepthLimit && exact::available(p)) {
    tail_one = exact::m_tail(p, SignSpec::all_one(), depth + 1);
    tail_zero = exact::m_tail(p, SignSpec::all_zero(), depth + 1);
  }
  exact_out = tail_one && tail_zero;

  if (exact_out) {
    std::vector<std::array<Rational, 2>> terms(static_cast<std::size_t>(depth));
    for (Index n = 1; n <= depth; ++n) {
      terms[static_cast<std::size_t>(n - 1)] = {exact::m_term(p, n, 0), exact::m_term(p, n, 1)};
    }
    const ExactValue base_lo = one() - *tail_one;
    const ExactValue base_hi = one() - *tail_zero;
    for (Index w = 0; w < n_words; ++w) {
      Word word(static_cast<std::size_t>(depth));
      Rational prefix = 0;
      for (Index i = 0; i < depth; ++i) {
        const auto bit = static_cast<std::uint8_t>((w >> (depth - 1 - i)) & 1);
        word[static_cast<std::size_t>(i)] = bit;
        prefix += terms[static_cast<std::size_t>(i)][bit];
      }
      auto& iv = out[static_cast<std::size_t>(w)];
      iv.word = std::move(word);
      iv.lo_exact = base_lo - ExactValue(prefix);
      iv.hi_exact = base_hi - ExactValue(prefix);
      iv.lo = {iv.lo_exact->to_double(), 0.0};
      iv.hi = {iv.hi_exact->to_double(), 0.0};
    }
    return out;
  }

  const BoundedValue t1 = m_tail(p, SignSpec::all_one(), depth + 1, tol);
  const BoundedValue t0 = m_tail(p, SignSpec::all_zero(), depth + 1, tol);
  std::vector<std::array<double, 2>> terms(static_cast<std::size_t>(depth));
  for (Index n = 1; n <= depth; ++n) terms[static_cast<std::size_t>(n - 1)] = {m_term(p, n, 0), m_term(p, n, 1)};
  const double rounding = 4.0 * kEps * static_cast<double>(depth + 2);
  for (Index w = 0; w < n_words; ++w) {
    Word word(static_cast<std::size_t>(depth));
    CompensatedSum prefix;
    for (Index i = 0; i < depth; ++i) {
      const auto bit = static_cast<std::uint8_t>((w >> (depth - 1 - i)) & 1);
      word[static_cast<std::size_t>(i)] = bit;
      prefix.add(terms[static_cast<std::size_t>(i)][bit]);
    }
    auto& iv = out[static_cast<std::size_t>(w)];
    iv.word = std::move(word);
    iv.lo = {1.0 - prefix.value() - t1.value, t1.radius + rounding};
    iv.hi = {1.0 - prefix.value() - t0.value, t0.radius + rounding};
  }
  return out;
}

void merge_intervals(const std::vector<LabeledInterval>& intervals, std::vector<MergedInterval>& merged,
                     std::vector<Ambiguity>& ambiguous) {
  std::vector<std::size_t> order(intervals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Endpoint ea = lo_of(intervals[a]), eb = lo_of(intervals[b]);
    if (ea.exact && eb.exact && ea.value == eb.value) return compare(*ea.exact, *eb.exact) == Sign::negative;
    return ea.value < eb.value;
  });

  merged.clear();
  ambiguous.clear();
  if (order.empty()) return;
  std::size_t top = order.front();  // interval holding the current right end
  MergedInterval current{intervals[top].lo.value, intervals[top].hi.value, 1};
  for (std::size_t i = 1; i < order.size(); ++i) {
    const LabeledInterval& next = intervals[order[i]];
    const Endpoint right = hi_of(intervals[top]);
    const Endpoint left = lo_of(next);
    const Sign gap = difference_sign(left, right);
    if (gap == Sign::positive) {
      merged.push_back(current);
      current = {next.lo.value, next.hi.value, 1};
      top = order[i];
      continue;
    }
    if (gap == Sign::unknown) {
      ambiguous.push_back({intervals[top].word, next.word, left.value - right.value, left.radius + right.radius});
    }
    ++current.members;
    if (difference_sign(hi_of(next), right) == Sign::positive) {
      current.hi = next.hi.value;
      top = order[i];
    }
  }
  merged.push_back(current);
}

std::optional<ExactValue> exact_I(const Partition& p, Index n) {
  if (!exact::available(p)) return std::nullopt;
  return exact::I(p, n);
}

double I_value(const Partition& p, Index n, double tol) {
  if (auto e = exact_I(p, n)) return e->to_double();
  return I_length(p, n, tol * p.t(n + 1)).value;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Exact periodicity G(n + P) = c G(n) for n >= L.
ConditionCheck periodic_tail_check(const Partition& p) {
  ConditionCheck c{"periodic_tail", false, 0, ""};
  const auto& tail = p.geometric_tail();
  if (!tail || !p.has_exact_values()) {
    c.detail = "no exact eventually geometric tail";
    return c;
  }
  const Index L = tail->head_length, P = tail->period;
  const auto first = exact::G(p, L);
  const auto shifted = exact::G(p, L + P);
  if (!first || !shifted || !(*shifted == *first * tail->ratio)) {
    c.detail = "periodicity check failed";
    return c;
  }
  bool all_positive = true, all_nonpositive = true;
  std::string signs;
  for (Index n = L; n < L + P; ++n) {
    const Sign s = exact::G(p, n)->sign();
    signs.push_back(sign_char(s));
    all_positive = all_positive && s == Sign::positive;
    all_nonpositive = all_nonpositive && (s == Sign::negative || s == Sign::zero);
  }
  c.from = L;
  c.detail = "G(n+" + std::to_string(P) + ") = " + tail->ratio.get_str() + " G(n) for n >= " + std::to_string(L) +
             "; signs over one period: " + signs;
  c.holds = all_positive || all_nonpositive;
  c.name = all_positive ? "periodic_tail_positive" : (all_nonpositive ? "periodic_tail_nonpositive" : "periodic_tail");
  return c;
}

// For t_n = 1/n: g(n+1) - g(n+2) - g(n+3) = Q(n) / (2 (n+1)^2 (n+2)^2 (n+3)^2 (n+4)^2) with
// Q(n) = -n^4 - 2n^3 + 27n^2 + 116n + 124, and every remaining term of G(n) is negative.
ConditionCheck luroth_quartic_check(const Partition& p) {
  ConditionCheck c{"luroth_quartic", false, 0, ""};
  if (!p.is_luroth()) {
    c.detail = "not the Luroth partition";
    return c;
  }
  const std::array<long, 5> q{124, 116, 27, -2, -1};  // ascending powers
  auto q_at = [&](const Rational& x) {
    Rational v = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) v = Rational(v * x) + Rational(*it);
    return v;
  };
  // Both sides times the denominator are polynomials of degree <= 4, so
  // agreement at more than four points is an identity.
  for (Index n = 1; n <= 12; ++n) {
    const Rational lhs = exact::g(p, n + 1) - exact::g(p, n + 2) - exact::g(p, n + 3);
    Rational den = 2;
    for (Index j = 1; j <= 4; ++j) den *= Rational((n + j) * (n + j));
    if (lhs != q_at(Rational(n)) / den) {
      c.detail = "identity check failed at n = " + std::to_string(n);
      return c;
    }
  }
  // Smallest N with every Taylor coefficient of Q at N negative.
  for (long shift = 0; shift <= 100; ++shift) {
    std::array<long, 5> coeff = q;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      for (std::size_t j = coeff.size() - 1; j > i; --j) coeff[j - 1] += shift * coeff[j];
    }
    if (std::all_of(coeff.begin(), coeff.end(), [](long v) { return v < 0; })) {
      c.holds = true;
      c.from = shift;
      c.detail = "Q(n) = -n^4-2n^3+27n^2+116n+124 has negative Taylor coefficients at n = " + std::to_string(shift) +
                 "; identity verified at n = 1..12";
      return c;
    }
  }
  c.detail = "no shift with negative coefficients";
  return c;
}

struct TailCondition {
  const char* name;
  bool positive;  // true: implies G(n) > 0, false: G(n) <= 0
  bool (*test)(const TailStats&);
  const char* description;
};

double A_ratio(double x) { return 1.0 / (2.0 * x) - x * x / 2.0 + 3.0 * x - 1.5; }
double B_ratio(double x) { return 1.0 / (2.0 * x) - x * x / 2.0; }

const std::array<TailCondition, 5> kTailConditions{{
    {"small_ratio_bound", true,
     [](const TailStats& s) { return s.sup_certified && s.s_k <= std::sqrt(2.0) - 1.0 - kConditionMargin; },
     "sup rho <= sqrt(2) - 1"},
    {"small_ratio_gap", true,
     [](const TailStats& s) {
       if (!s.sup_certified || !s.inf_certified || s.s_k > 0.5) return false;
       const double m = s.m_k;
       return s.s_k < std::sqrt(2.0 + m * m * m / (1.0 - m)) - 1.0 - kConditionMargin;
     },
     "sup rho <= 1/2 and sup rho < sqrt(2 + m^3/(1-m)) - 1"},
    {"small_ratio_overlap", false,
     [](const TailStats& s) {
       if (!s.sup_certified || !s.inf_certified || s.s_k > 0.5) return false;
       const double x = s.s_k;
       return s.m_k >= std::sqrt(2.0 + x * x * x / (1.0 - x)) - 1.0 + kConditionMargin;
     },
     "sup rho <= 1/2 and inf rho >= sqrt(2 + s^3/(1-s)) - 1"},
    {"large_ratio_overlap", false,
     [](const TailStats& s) {
       if (!s.sup_certified || !s.inf_certified || s.m_k <= 0.5 + kConditionMargin) return false;
       const double x = s.s_k;
       return x <= 1.0 - 7.0 * x * x / (8.0 * x * x * x + 4.0) - kConditionMargin;
     },
     "inf rho > 1/2 and s <= 1 - 7 s^2 / (8 s^3 + 4)"},
    {"limit_ratio_overlap", false,
     [](const TailStats& s) {
       if (!s.sup_certified || !s.inf_certified || s.m_k <= 0.5 + kConditionMargin) return false;
       return A_ratio(s.s_k) - B_ratio(s.s_k) * s.m_k / (1.0 - s.m_k) <= -kConditionMargin;
     },
     "inf rho > 1/2 and A(s) - B(s) m/(1-m) <= 0"},
}};

std::vector<ConditionCheck> tail_condition_checks(const Partition& p, Index scan) {
  std::vector<ConditionCheck> out;
  std::vector<TailStats> stats;
  for (Index n = 0; n <= scan && n < p.max_index(); ++n) stats.push_back(p.tail_stats(n, n + 1));
  for (const auto& cond : kTailConditions) {
    ConditionCheck c{cond.name, false, 0, cond.description};
    for (Index n = 0; n < static_cast<Index>(stats.size()); ++n) {
      if (cond.test(stats[static_cast<std::size_t>(n)])) {
        c.holds = true;
        c.from = n;
        const auto& s = stats[static_cast<std::size_t>(n)];
        c.detail += "; holds for n >= " + std::to_string(n) + " with inf " + fmt(s.m_k) + ", sup " + fmt(s.s_k);
        break;
      }
    }
    if (!c.holds) c.detail += "; not satisfied for N <= " + std::to_string(scan);
    out.push_back(std::move(c));
  }
  return out;
}

bool implies_positive(const ConditionCheck& c) {
  return c.name == "periodic_tail_positive" || c.name == "small_ratio_bound" || c.name == "small_ratio_gap";
}

}  // namespace

GSign evaluate_G(const Partition& p, Index n, double tol) {
  GSign s;
  s.n = n;
  if (exact::available(p)) {
    s.exact = exact::G(p, n);
    if (s.exact) {
      s.value = {s.exact->to_double(), 0.0};
      s.sign = s.exact->sign();
      return s;
    }
  }
  s.value = G(p, n, tol);
  s.sign = s.value.sign();
  return s;
}

std::string structure_name(Structure s) {
  switch (s) {
    case Structure::finite_union: return "finite_union";
    case Structure::cantor: return "cantor";
    case Structure::homogeneous_cantor: return "homogeneous_cantor";
    case Structure::undetermined: break;
  }
  return "undetermined";
}

LabeledInterval interval(const Partition& p, const Word& word, double tol) {
  LabeledInterval iv;
  iv.word = word;
  const SignSpec lo_spec(word, TailKind::all_one);
  const SignSpec hi_spec(word, TailKind::all_zero);
  if (exact::available(p)) {
    iv.lo_exact = exact::M(p, lo_spec);
    iv.hi_exact = exact::M(p, hi_spec);
  }
  if (iv.lo_exact && iv.hi_exact) {
    iv.lo = {iv.lo_exact->to_double(), 0.0};
    iv.hi = {iv.hi_exact->to_double(), 0.0};
  } else {
    iv.lo_exact.reset();
    iv.hi_exact.reset();
    iv.lo = M(p, lo_spec, tol);
    iv.hi = M(p, hi_spec, tol);
  }
  return iv;
}

MSetApprox mset_approx(const Partition& p, Index depth, double tol) {
  if (depth < 0 || depth > kMaxDepth) {
    throw std::invalid_argument("depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
  }
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  MSetApprox out;
  out.depth = depth;
  out.intervals = build_intervals(p, depth, tol, out.exact);
  merge_intervals(out.intervals, out.merged, out.ambiguous);
  out.verdict = classify(p, std::max<Index>(depth, 1), tol);
  return out;
}

Verdict classify(const Partition& p, Index probe_depth, double tol) {
  if (probe_depth < 1) throw std::invalid_argument("probe_depth must be >= 1");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  Verdict v;

  std::vector<ConditionCheck> checks;
  checks.push_back(periodic_tail_check(p));
  checks.push_back(luroth_quartic_check(p));
  for (auto& c : tail_condition_checks(p, std::max(probe_depth, kMinScan))) checks.push_back(std::move(c));

  for (const auto& c : checks) {
    if (!c.holds) continue;
    auto& slot = implies_positive(c) ? v.positive_from : v.nonpositive_from;
    if (!slot || c.from < *slot) slot = c.from;
  }

  Index last = probe_depth;
  if (v.positive_from) last = std::max(last, *v.positive_from);
  if (v.nonpositive_from) last = std::max(last, *v.nonpositive_from);
  for (Index n = 0; n <= last; ++n) v.g_signs.push_back(evaluate_G(p, n, tol));
  auto sign_at = [&](Index n) { return v.g_signs[static_cast<std::size_t>(n)].sign; };

  // Golden-ratio condition over the probed range.
  {
    std::vector<double> I(static_cast<std::size_t>(probe_depth + 1));
    for (Index n = 0; n <= probe_depth; ++n) I[static_cast<std::size_t>(n)] = I_value(p, n, tol);
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    Index n1 = probe_depth;
    while (n1 > 0) {
      const double r = I[static_cast<std::size_t>(n1 - 1)] / I[static_cast<std::size_t>(n1)];
      if (!(r > 1.0 && r < golden)) break;
      --n1;
    }
    if (n1 < probe_depth) v.golden_ratio_from = n1;
    ConditionCheck c{"golden_ratio", v.golden_ratio_from.has_value(), n1,
                     "I(n-1)/I(n) in (1, golden ratio) for probed n"};
    c.detail += v.golden_ratio_from ? "; holds for " + std::to_string(n1) + " < n <= " + std::to_string(probe_depth)
                                    : "; fails at n = " + std::to_string(probe_depth);
    checks.push_back(std::move(c));
  }
  v.evidence = std::move(checks);

  if (v.nonpositive_from && !v.positive_from) {
    const Index from = *v.nonpositive_from;
    for (Index n = from; n <= last; ++n) {
      if (sign_at(n) == Sign::positive) {
        v.evidence.push_back({"consistency", false, n, "certified positive G contradicts the tail condition"});
        return v;
      }
    }
    Index level = from;
    while (level > 0 && (sign_at(level - 1) == Sign::negative || sign_at(level - 1) == Sign::zero)) --level;
    v.structure = Structure::finite_union;
    v.stable_level = level;
    if (level <= kCountDepthLimit) {
      bool exact_flag = false;
      const auto ivs = build_intervals(p, level, tol, exact_flag);
      std::vector<MergedInterval> merged;
      std::vector<Ambiguity> amb;
      merge_intervals(ivs, merged, amb);
      if (amb.empty()) v.count = merged.size();
    } else {
      bool all_positive = true;
      for (Index n = 0; n < level; ++n) all_positive = all_positive && sign_at(n) == Sign::positive;
      if (all_positive) v.count = std::size_t{1} << level;
    }
    return v;
  }
  if (v.positive_from && !v.nonpositive_from) {
    const Index from = *v.positive_from;
    bool all_positive = true;
    for (Index n = 0; n < from; ++n) all_positive = all_positive && sign_at(n) == Sign::positive;
    v.structure = all_positive ? Structure::homogeneous_cantor : Structure::cantor;
    return v;
  }
  return v;
}

DimensionSeries dimensions(const Partition& p, Index k_max, double tol) {
  if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
  DimensionSeries out;
  out.verdict = classify(p, 8, tol);
  if (out.verdict.structure != Structure::cantor && out.verdict.structure != Structure::homogeneous_cantor) {
    throw std::domain_error("dimension formula needs a Cantor verdict, got " + structure_name(out.verdict.structure));
  }
  const double log_i0 = std::log(I_value(p, 0, tol));
  for (Index k = 1; k <= k_max; ++k) {
    const double ik = I_value(p, k, tol);
    out.k.push_back(k);
    out.I.push_back(ik);
    out.sequence.push_back(static_cast<double>(k) * std::log(2.0) / (log_i0 - std::log(ik)));
  }
  const std::size_t n = out.sequence.size();
  out.hausdorff.resize(n);
  out.packing.resize(n);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = n; i-- > 0;) {
    lo = std::min(lo, out.sequence[i]);
    hi = std::max(hi, out.sequence[i]);
    out.hausdorff[i] = lo;
    out.packing[i] = hi;
  }
  return out;
}

}  // namespace alpha_luroth
