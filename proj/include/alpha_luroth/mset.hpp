#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alpha_luroth/bounded_value.hpp"
#include "alpha_luroth/dynamics.hpp"
#include "alpha_luroth/partition.hpp"
#include "alpha_luroth/rational.hpp"

namespace alpha_luroth {

/// I_omega = [M(omega 1...), M(omega 0...)].
struct LabeledInterval {
  Word word;
  BoundedValue lo;
  BoundedValue hi;
  std::optional<ExactValue> lo_exact;
  std::optional<ExactValue> hi_exact;
};

/// Endpoints exactly when the exact series are available, otherwise through
/// M with the given tolerance.
LabeledInterval interval(const Partition& p, const Word& word, double tol);

struct MergedInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t members = 0;
};

/// Neighbouring intervals whose overlap or gap is below the combined radii.
/// They are merged in the rendering; the pair is reported here.
struct Ambiguity {
  Word left;
  Word right;
  double gap = 0.0;
  double radius = 0.0;
};

enum class Structure { finite_union, cantor, homogeneous_cantor, undetermined };

std::string structure_name(Structure s);

struct ConditionCheck {
  std::string name;
  bool holds = false;
  Index from = 0;  // first n covered when holds
  std::string detail;
};

struct GSign {
  Index n = 0;
  BoundedValue value;
  std::optional<ExactValue> exact;
  Sign sign = Sign::unknown;
};

/// G(n) exactly when the exact series are available, otherwise as a bounded
/// floating-point value.
GSign evaluate_G(const Partition& p, Index n, double tol);

struct Verdict {
  Structure structure = Structure::undetermined;
  /// Number of intervals for finite_union; 0 when it could not be certified.
  std::size_t count = 0;
  /// Level whose union already equals the set, for finite_union.
  std::optional<Index> stable_level;
  std::optional<Index> positive_from;
  std::optional<Index> nonpositive_from;
  std::vector<GSign> g_signs;
  std::vector<ConditionCheck> evidence;
  /// Smallest N1 with I(n-1)/I(n) in (1, golden ratio) for every probed n > N1.
  std::optional<Index> golden_ratio_from;
};

struct MSetApprox {
  Index depth = 0;
  std::vector<LabeledInterval> intervals;  // in lexicographic word order
  std::vector<MergedInterval> merged;
  std::vector<Ambiguity> ambiguous;
  bool exact = false;
  Verdict verdict;
};

inline constexpr Index kMaxDepth = 20;

/// All 2^depth intervals with their certified union. Throws
/// std::invalid_argument for depth outside [0, kMaxDepth].
MSetApprox mset_approx(const Partition& p, Index depth, double tol);

/// Structure of the set of attainable averages. Finite evidence alone never
/// produces a verdict other than undetermined; a certified tail condition on
/// the sign of G is always required.
Verdict classify(const Partition& p, Index probe_depth, double tol);

struct DimensionSeries {
  std::vector<Index> k;
  std::vector<double> I;
  /// k log 2 / (log I(0) - log I(k)).
  std::vector<double> sequence;
  /// min and max of the sequence over [k, k_max].
  std::vector<double> hausdorff;
  std::vector<double> packing;
  Verdict verdict;
};

/// Dimension approximants for k = 1..k_max. Throws std::domain_error unless the
/// verdict is cantor or homogeneous_cantor, and std::invalid_argument for
/// k_max < 2.
DimensionSeries dimensions(const Partition& p, Index k_max, double tol);

}  // namespace alpha_luroth
