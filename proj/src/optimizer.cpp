#include "rdh/optimizer.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "rdh/errors.hpp"

namespace rdh {

namespace {

// Achieved-capacity selection shared by both DP implementations: smallest
// minimizing j at or above the target, by total distortion or by the
// distortion/capacity ratio (compared exactly via cross products).
long long select_ec_star(const std::vector<long long>& f, long long ec_exp,
                         Objective objective) {
  const auto cap = static_cast<long long>(f.size()) - 1;
  long long best_j = -1;
  for (long long j = ec_exp; j <= cap; ++j) {
    if (f[j] >= kInfeasible) continue;
    if (best_j < 0) {
      best_j = j;
      continue;
    }
    const bool better = objective == Objective::min_total_distortion
                            ? f[j] < f[best_j]
                            : f[j] * best_j < f[best_j] * j;
    if (better) best_j = j;
  }
  if (best_j < 0) {
    long long reachable = 0;
    for (long long j = cap; j >= 0; --j) {
      if (f[j] < kInfeasible) {
        reachable = j;
        break;
      }
    }
    throw capacity_error("no bin selection reaches the requested capacity " +
                             std::to_string(ec_exp) +
                             " bits (largest reachable: " +
                             std::to_string(reachable) + ")",
                         reachable);
  }
  return best_j;
}

}  // namespace

std::vector<BinChoice> enumerate_choices(int t, int b,
                                         const std::vector<LinePoint>& line,
                                         int lo, int hi) {
  const std::size_t n = line.size();
  std::vector<long long> prefix(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i)
    prefix[i + 1] = prefix[i] + line[i].count;
  const long long total = prefix[n];

  std::vector<BinChoice> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (line[i].e1 < lo) continue;
    if (line[i].e1 > hi) break;  // line is ascending in e1
    const long long ci = line[i].count;
    const long long below = prefix[i];
    const long long above = total - prefix[i + 1];
    out.push_back({t, b, line[i].e1, kPosInf, ci, ci + 2 * below});
    out.push_back({t, b, kNegInf, line[i].e1, ci, ci + 2 * above});
    for (std::size_t q = i + 1; q < n; ++q) {
      if (line[q].e1 > hi) break;
      const long long cq = line[q].count;
      const long long above_q = total - prefix[q + 1];
      out.push_back({t, b, line[i].e1, line[q].e1, ci + cq,
                     ci + cq + 2 * (below + above_q)});
    }
  }
  return out;
}

std::vector<ChoiceGroup> build_choice_groups(const std::vector<Dpeh2D>& hists,
                                             int hmin) {
  std::vector<ChoiceGroup> groups;
  for (const Dpeh2D& h : hists) {
    for (const auto& [b, points] : h.line_index) {
      if (b < kMinIntercept || b > kMaxIntercept) continue;
      long long mass = 0;
      for (const LinePoint& p : points) mass += p.count;
      if (mass < hmin) continue;
      groups.push_back({h.t, b, enumerate_choices(h.t, b, points)});
    }
  }
  return groups;
}

DpTables dp_forward(const std::vector<ChoiceGroup>& groups, long long ec_exp,
                    long long delta) {
  if (ec_exp < 0 || delta < 0)
    throw rdh_error(errc::argument, "capacity target and margin must be >= 0");
  const long long cap = ec_exp + delta;
  std::vector<long long> prev(static_cast<std::size_t>(cap + 1), kInfeasible);
  prev[0] = 0;

  DpTables tables;
  tables.trans.reserve(groups.size());
  std::vector<long long> cur;
  for (const ChoiceGroup& g : groups) {
    cur = prev;
    std::vector<int> trans_row(static_cast<std::size_t>(cap + 1), -1);
    for (std::size_t k = 0; k < g.choices.size(); ++k) {
      const BinChoice& c = g.choices[k];
      assert(c.ec >= 1);
      for (long long j = c.ec; j <= cap; ++j) {
        const long long src = prev[static_cast<std::size_t>(j - c.ec)];
        if (src >= kInfeasible) continue;
        const long long cand = src + c.ed2;
        if (cand < cur[static_cast<std::size_t>(j)]) {
          cur[static_cast<std::size_t>(j)] = cand;
          trans_row[static_cast<std::size_t>(j)] = static_cast<int>(k);
        }
      }
    }
    tables.trans.push_back(std::move(trans_row));
    prev.swap(cur);
  }
  tables.f = std::move(prev);
  return tables;
}

BinPlan dp_backtrack(const DpTables& tables,
                     const std::vector<ChoiceGroup>& groups, long long ec_exp,
                     Objective objective) {
  assert(tables.trans.size() == groups.size());
  const long long ec_star = select_ec_star(tables.f, ec_exp, objective);

  BinPlan plan;
  plan.ec_star = ec_star;
  plan.ed2_star = tables.f[static_cast<std::size_t>(ec_star)];
  plan.assignments.resize(groups.size());
  long long j = ec_star;
  for (std::size_t gi = groups.size(); gi-- > 0;) {
    BinAssignment& a = plan.assignments[gi];
    a.t = groups[gi].t;
    a.b = groups[gi].b;
    const int k = tables.trans[gi][static_cast<std::size_t>(j)];
    if (k >= 0) {
      const BinChoice& c = groups[gi].choices[static_cast<std::size_t>(k)];
      a.left = c.left;
      a.right = c.right;
      j -= c.ec;
    }
  }
  assert(j == 0);
  return plan;
}

BinPlan dp_forward_rolling(const std::vector<ChoiceGroup>& groups,
                           long long ec_exp, long long delta,
                           Objective objective) {
  if (ec_exp < 0 || delta < 0)
    throw rdh_error(errc::argument, "capacity target and margin must be >= 0");
  const long long cap = ec_exp + delta;
  std::vector<long long> f(static_cast<std::size_t>(cap + 1), kInfeasible);
  f[0] = 0;

  // Sparse transfer records: only capacities where a choice beat the
  // inherited state, ascending in j per group.
  struct Decision {
    long long j;
    int k;
  };
  std::vector<std::vector<Decision>> records(groups.size());

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const ChoiceGroup& g = groups[gi];
    if (g.choices.empty()) continue;
    // In-place update is sound descending j: every source f[j - ec] sits at
    // a lower index (ec >= 1), so it still holds the previous group's value.
    for (long long j = cap; j >= 1; --j) {
      long long best = f[static_cast<std::size_t>(j)];
      int best_k = -1;
      for (std::size_t k = 0; k < g.choices.size(); ++k) {
        const BinChoice& c = g.choices[k];
        assert(c.ec >= 1);
        if (c.ec > j) continue;
        const long long src = f[static_cast<std::size_t>(j - c.ec)];
        if (src >= kInfeasible) continue;
        if (src + c.ed2 < best) {
          best = src + c.ed2;
          best_k = static_cast<int>(k);
        }
      }
      if (best_k >= 0) {
        f[static_cast<std::size_t>(j)] = best;
        records[gi].push_back({j, best_k});
      }
    }
    std::reverse(records[gi].begin(), records[gi].end());
  }

  const long long ec_star = select_ec_star(f, ec_exp, objective);

  BinPlan plan;
  plan.ec_star = ec_star;
  plan.ed2_star = f[static_cast<std::size_t>(ec_star)];
  plan.assignments.resize(groups.size());
  long long j = ec_star;
  for (std::size_t gi = groups.size(); gi-- > 0;) {
    BinAssignment& a = plan.assignments[gi];
    a.t = groups[gi].t;
    a.b = groups[gi].b;
    const auto& rec = records[gi];
    const auto it = std::lower_bound(
        rec.begin(), rec.end(), j,
        [](const Decision& d, long long value) { return d.j < value; });
    if (it != rec.end() && it->j == j) {
      const BinChoice& c = groups[gi].choices[static_cast<std::size_t>(it->k)];
      a.left = c.left;
      a.right = c.right;
      j -= c.ec;
    }
  }
  assert(j == 0);
  return plan;
}

}  // namespace rdh
