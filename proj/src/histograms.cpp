#include "rdh/histograms.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "rdh/errors.hpp"

namespace rdh {

int complexity(const PredictionContext& ctx, int xhat) {
  const auto d = [](int a, int b) { return std::abs(a - b); };
  return d(ctx.v1, xhat) + d(ctx.v2, xhat) + d(ctx.v3, xhat) +
         d(ctx.v4, xhat) + d(ctx.u3, ctx.v3) + d(ctx.v3, ctx.u4) +
         d(ctx.u4, ctx.u5) + d(ctx.u6, ctx.u7) + d(ctx.u7, ctx.u8) +
         d(ctx.u8, ctx.u9) + d(ctx.v2, ctx.u3) + d(ctx.u3, ctx.u6) +
         d(ctx.v3, ctx.u7) + d(ctx.v4, ctx.u4) + d(ctx.u4, ctx.u8) +
         d(ctx.u1, ctx.u2) + d(ctx.u2, ctx.u5) + d(ctx.u5, ctx.u9) +
         d(ctx.v4, ctx.u2);
}

Thresholds thresholds(const std::vector<int>& all, int m) {
  if (m < 1) throw rdh_error(errc::argument, "class count must be >= 1");
  if (all.empty())
    throw rdh_error(errc::argument, "cannot take quantiles of no samples");
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<long long>(sorted.size());
  Thresholds th;
  th.s.reserve(static_cast<std::size_t>(m - 1));
  for (int i = 0; i + 1 < m; ++i) {
    // Smallest th with #{n_j <= th} >= ceil(N * (i+1) / m) is the value at
    // that rank: everything strictly below it has lower count.
    const long long rank = (n * (i + 1) + m - 1) / m;
    th.s.push_back(sorted[static_cast<std::size_t>(rank - 1)]);
  }
  return th;
}

std::vector<Dpeh2D> build_dpehs(const std::vector<ErrorSample>& samples,
                                const Thresholds& th) {
  std::vector<Dpeh2D> hists(static_cast<std::size_t>(th.class_count()));
  for (std::size_t t = 0; t < hists.size(); ++t)
    hists[t].t = static_cast<int>(t);
  for (const ErrorSample& s : samples) {
    Dpeh2D& h = hists[static_cast<std::size_t>(th.class_of(s.complexity))];
    ++h.bins[{s.err.e1, s.err.e2}];
    ++h.total;
  }
  // bins iterate in ascending (e1, e2), so per-line points arrive in
  // ascending e1 already.
  for (Dpeh2D& h : hists) {
    for (const auto& [key, count] : h.bins) {
      const auto [e1, e2] = key;
      h.line_index[e2 - e1].push_back({e1, count});
    }
  }
  return hists;
}

std::vector<int> valid_lines(const Dpeh2D& h, int hmin) {
  std::vector<int> out;
  for (const auto& [b, points] : h.line_index) {
    long long mass = 0;
    for (const LinePoint& p : points) mass += p.count;
    if (mass >= hmin) out.push_back(b);
  }
  return out;
}

std::string dump_histogram_csv(const Dpeh2D& h) {
  std::ostringstream os;
  for (const auto& [key, count] : h.bins)
    os << h.t << ',' << key.first << ',' << key.second << ',' << count
       << '\n';
  return os.str();
}

}  // namespace rdh
