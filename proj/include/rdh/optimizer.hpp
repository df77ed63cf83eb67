#ifndef RDH_OPTIMIZER_HPP
#define RDH_OPTIMIZER_HPP

#include <cstdint>
#include <limits>
#include <vector>

#include "rdh/histograms.hpp"

namespace rdh {

// Sentinels for unbounded bin sides.
constexpr int kNegInf = std::numeric_limits<int>::min();
constexpr int kPosInf = std::numeric_limits<int>::max();

// Finite expansion abscissae are searched only in this window; histogram
// mass outside it still contributes to shift distortion.
constexpr int kMinAbscissa = -14;
constexpr int kMaxAbscissa = 14;

// Lines with intercepts outside this window never receive expansion bins
// (their flag-grid slots would be unbounded otherwise); their pixels are
// left untouched by both encoder and decoder.
constexpr int kMinIntercept = -15;
constexpr int kMaxIntercept = 15;

// Distortion sentinel for infeasible capacities.
constexpr long long kInfeasible = std::numeric_limits<long long>::max() / 4;

// One candidate (left, right) expansion pair for line (t, b).
// Distortion is kept in half-units (doubled) so the half-count contributed
// by each expanded pixel stays integral: ed2 = ec + 2 * shifted-pixel count.
struct BinChoice {
  int t = 0;
  int b = 0;
  int left = kNegInf;   // e1 abscissa or -inf sentinel
  int right = kPosInf;  // e1 abscissa or +inf sentinel
  long long ec = 0;     // capacity in bits
  long long ed2 = 0;    // distortion in half-units

  bool operator==(const BinChoice&) const = default;
};

// All candidate choices of one line, in their pinned enumeration order.
struct ChoiceGroup {
  int t = 0;
  int b = 0;
  std::vector<BinChoice> choices;
};

// Forward-pass result: the last capacity row of minimum distortions plus
// the per-group transfer sources for backtracking.
struct DpTables {
  std::vector<long long> f;             // f[j] = min ed2 at capacity exactly j
  std::vector<std::vector<int>> trans;  // trans[g][j] = choice index or -1
};

// Final selection for one line; sentinel sides mean no expansion there.
struct BinAssignment {
  int t = 0;
  int b = 0;
  int left = kNegInf;
  int right = kPosInf;

  bool is_noop() const { return left == kNegInf && right == kPosInf; }
  bool operator==(const BinAssignment&) const = default;
};

// The optimum: one assignment per group (group order preserved) and the
// achieved capacity/distortion totals.
struct BinPlan {
  std::vector<BinAssignment> assignments;
  long long ec_star = 0;
  long long ed2_star = 0;

  bool operator==(const BinPlan&) const = default;
};

// How the achieved capacity is selected among feasible ones.
enum class Objective : std::uint8_t {
  min_total_distortion,  // argmin_j f[j] over j >= target (operative rule)
  min_distortion_ratio,  // argmin_j f[j]/j over j >= target
};

// Emits every candidate pair for one line, ascending by anchor point p:
// (p, +inf), (-inf, p), then (p, q) for each in-range q > p. Points outside
// [lo, hi] are never endpoints but still count toward shift sums. The knot
// of the DP's tie-breaking, so the order is pinned.
std::vector<BinChoice> enumerate_choices(int t, int b,
                                         const std::vector<LinePoint>& line,
                                         int lo = kMinAbscissa,
                                         int hi = kMaxAbscissa);

// Collects the choice groups of every valid line with intercept inside
// [kMinIntercept, kMaxIntercept], t ascending then b ascending — the same
// order the auxiliary flag grid is serialized in.
std::vector<ChoiceGroup> build_choice_groups(const std::vector<Dpeh2D>& hists,
                                             int hmin);

// Grouped-knapsack forward pass over capacities 0..ec_exp+delta: per group
// pick at most one choice; f[j] is the minimum total ed2 at capacity
// exactly j. Updates are strict improvements, so ties keep the inherited
// state first and the lowest choice index second.
DpTables dp_forward(const std::vector<ChoiceGroup>& groups, long long ec_exp,
                    long long delta);

// Picks the achieved capacity (smallest j on ties) among j >= ec_exp and
// walks the transfer sources backwards into one assignment per group.
// Throws capacity_error carrying the largest feasible capacity when no
// j >= ec_exp is reachable.
BinPlan dp_backtrack(const DpTables& tables,
                     const std::vector<ChoiceGroup>& groups, long long ec_exp,
                     Objective objective = Objective::min_total_distortion);

// Same plan as dp_forward + dp_backtrack under the same tie-breaking, but
// keeps only one capacity row in flight plus sparse per-group decision
// records instead of dense transfer tables.
BinPlan dp_forward_rolling(const std::vector<ChoiceGroup>& groups,
                           long long ec_exp, long long delta,
                           Objective objective = Objective::min_total_distortion);

}  // namespace rdh

#endif  // RDH_OPTIMIZER_HPP
