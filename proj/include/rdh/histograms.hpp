#ifndef RDH_HISTOGRAMS_HPP
#define RDH_HISTOGRAMS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rdh/predictors.hpp"

namespace rdh {

// Ascending complexity thresholds splitting pixels into class_count()
// classes: class 0 is [0, s[0]], class t is [s[t-1]+1, s[t]], and the last
// class is unbounded above. Duplicate thresholds leave interior classes
// empty, which is allowed.
struct Thresholds {
  std::vector<int> s;  // class_count() - 1 non-decreasing values

  int class_count() const { return static_cast<int>(s.size()) + 1; }

  int class_of(int complexity) const {
    for (std::size_t t = 0; t < s.size(); ++t)
      if (complexity <= s[t]) return static_cast<int>(t);
    return static_cast<int>(s.size());
  }

  bool operator==(const Thresholds&) const = default;
};

// One point of a diagonal line of the 2D error histogram.
struct LinePoint {
  int e1;
  int count;

  bool operator==(const LinePoint&) const = default;
};

// Sparse 2D double-error histogram of one complexity class, plus the same
// mass regrouped by line intercept b = e2 - e1 (each line is an independent
// 1D histogram because +-1 pixel changes slide points along their line).
struct Dpeh2D {
  int t = 0;                                       // complexity class index
  std::map<std::pair<int, int>, int> bins;         // (e1, e2) -> count
  std::map<int, std::vector<LinePoint>> line_index;  // b -> ascending-e1 points
  long long total = 0;
};

// One layer cell's double error together with its local complexity.
struct ErrorSample {
  DoubleError err;
  int complexity;
};

// The 19-term local complexity: sum of absolute differences between
// 4-adjacent pixel pairs of the context window, anchored on the rhombus
// prediction xhat for the four cross neighbors.
int complexity(const PredictionContext& ctx, int xhat);

// m-quantile thresholds over the complexity population: s[i] is the
// smallest value th with #{n <= th} / N >= (i+1)/m.
Thresholds thresholds(const std::vector<int>& all, int m);

// Buckets every sample into the 2D histogram of its complexity class and
// derives the per-line index.
std::vector<Dpeh2D> build_dpehs(const std::vector<ErrorSample>& samples,
                                const Thresholds& th);

// Line intercepts whose total mass reaches hmin, ascending. Only these
// lines may receive expansion bins (and flag bits).
std::vector<int> valid_lines(const Dpeh2D& h, int hmin);

// Debug dump, one `t,e1,e2,count` line per nonzero bin in (e1, e2) order.
std::string dump_histogram_csv(const Dpeh2D& h);

}  // namespace rdh

#endif  // RDH_HISTOGRAMS_HPP
