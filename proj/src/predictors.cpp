#include "rdh/predictors.hpp"

#include <algorithm>
#include <cassert>

namespace rdh {

namespace {

// Ceiling of (a + b) / 2 for non-negative integers.
int half_ceil(int a, int b) { return (a + b + 1) / 2; }

int clamp_intensity(int v) { return std::clamp(v, 0, 255); }

}  // namespace

PredictionContext read_context(const GrayImage& img, int row, int col,
                               int reserved_top_row) {
  assert(row >= 1 && row + 2 < img.height);
  assert(col >= 2 && col + 1 < img.width);
  const auto px = [&](int r, int c) -> int {
    int v = img.at(r, c);
    if (r >= reserved_top_row) v &= ~1;
    return v;
  };
  PredictionContext ctx;
  ctx.v1 = px(row - 1, col);
  ctx.v2 = px(row, col + 1);
  ctx.v3 = px(row + 1, col);
  ctx.v4 = px(row, col - 1);
  ctx.u1 = px(row - 1, col - 2);
  ctx.u2 = px(row, col - 2);
  ctx.u3 = px(row + 1, col + 1);
  ctx.u4 = px(row + 1, col - 1);
  ctx.u5 = px(row + 1, col - 2);
  ctx.u6 = px(row + 2, col + 1);
  ctx.u7 = px(row + 2, col);
  ctx.u8 = px(row + 2, col - 1);
  ctx.u9 = px(row + 2, col - 2);
  return ctx;
}

int predict_rhombus(const PredictionContext& ctx) {
  return (ctx.v1 + ctx.v2 + ctx.v3 + ctx.v4 + 3) / 4;
}

int predict_med(const PredictionContext& ctx) {
  const int lo = std::min(ctx.v3, ctx.v4);
  const int hi = std::max(ctx.v3, ctx.v4);
  if (ctx.u4 >= hi) return lo;
  if (ctx.u4 <= lo) return hi;
  return clamp_intensity(ctx.v3 + ctx.v4 - ctx.u4);
}

std::pair<double, double> edge_intensities(const GrayImage& img) {
  double sum1 = 0.0;
  double sum2 = 0.0;
  long long n = 0;
  for (int i = 1; i + 1 < img.height; ++i) {
    for (int j = 1; j + 1 < img.width; ++j) {
      sum1 += img.at(i - 1, j + 1) + img.at(i, j + 1) + img.at(i + 1, j + 1) -
              img.at(i - 1, j - 1) - img.at(i, j - 1) - img.at(i + 1, j - 1);
      sum2 += img.at(i - 1, j - 1) + img.at(i - 1, j) + img.at(i - 1, j + 1) -
              img.at(i + 1, j - 1) - img.at(i + 1, j) - img.at(i + 1, j + 1);
      ++n;
    }
  }
  if (n == 0) return {0.0, 0.0};
  return {sum1 / static_cast<double>(n), sum2 / static_cast<double>(n)};
}

int predict_nonlinear_rhombus(const PredictionContext& ctx, bool i1_ge_i2) {
  const int v1 = ctx.v1, v2 = ctx.v2, v3 = ctx.v3, v4 = ctx.v4;
  int pred;
  if (std::min(v1, v2) >= std::max(v3, v4)) {
    pred = half_ceil(std::max(v1, v2), std::min(v3, v4));
  } else if (std::min(v2, v3) >= std::max(v1, v4)) {
    pred = half_ceil(std::max(v2, v3), std::min(v1, v4));
  } else if (std::min(v3, v4) >= std::max(v1, v2)) {
    pred = half_ceil(std::max(v3, v4), std::min(v1, v2));
  } else if (std::min(v1, v4) >= std::max(v2, v3)) {
    pred = half_ceil(std::max(v1, v4), std::min(v2, v3));
  } else if (std::min(v1, v3) >= std::max(v2, v4) && i1_ge_i2) {
    pred = half_ceil(v1, v3);
  } else if (std::min(v2, v4) >= std::max(v1, v3) && !i1_ge_i2) {
    pred = half_ceil(v2, v4);
  } else {
    pred = predict_rhombus(ctx);
  }
  return clamp_intensity(pred);
}

int predict_nonlinear_rhombus(const PredictionContext& ctx, double i1,
                              double i2) {
  return predict_nonlinear_rhombus(ctx, i1 >= i2);
}

DoubleError double_errors(int x, const PredictionContext& ctx, bool i1_ge_i2,
                          PredictorPair pair) {
  const int e1 = x - predict_rhombus(ctx);
  switch (pair) {
    case PredictorPair::rhombus_nonlinear:
      return {e1, x - predict_nonlinear_rhombus(ctx, i1_ge_i2)};
    case PredictorPair::rhombus_med:
      return {e1, x - predict_med(ctx)};
    case PredictorPair::rhombus_rhombus:
    case PredictorPair::classic_fixed_bins:
      return {e1, e1};
  }
  return {e1, e1};
}

}  // namespace rdh
