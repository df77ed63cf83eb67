#ifndef RDH_PREDICTORS_HPP
#define RDH_PREDICTORS_HPP

#include <cstdint>
#include <utility>

#include "rdh/image.hpp"

namespace rdh {

// Which predictor pair drives the embedding. The value is serialized into
// the auxiliary header (2 bits), so the decoder reconstructs the same errors.
enum class PredictorPair : std::uint8_t {
  rhombus_nonlinear = 0,  // mean rhombus + nonlinear rhombus (default)
  rhombus_med = 1,        // mean rhombus + median edge detector
  rhombus_rhombus = 2,    // both predictors identical: 1D-histogram family
  classic_fixed_bins = 3, // single rhombus predictor with fixed bins (-1, 0)
};

// The 13-pixel causal context around a target pixel. v1..v4 are the four
// 4-adjacent neighbors (other layer); u1..u9 complete a 4-row x 4-column
// window spanning rows r-1..r+2 and columns c-2..c+1:
//
//        c-2  c-1   c   c+1
//  r-1   u1        v1
//  r     u2   v4   x    v2
//  r+1   u5   u4   v3   u3
//  r+2   u9   u8   u7   u6
//
// Every absolute-difference term of the complexity measure pairs two
// 4-adjacent pixels of this window.
struct PredictionContext {
  int v1, v2, v3, v4;
  int u1, u2, u3, u4, u5, u6, u7, u8, u9;
};

// Prediction errors of one pixel under the two active predictors. Changing
// the pixel by +-1 moves both errors by +-1, so e2 - e1 is invariant.
struct DoubleError {
  int e1;  // x - first prediction
  int e2;  // x - second prediction

  bool operator==(const DoubleError&) const = default;
};

// Reads the context window at (row, col) from the current image state.
// Pixels at or below `reserved_top_row` have their LSB masked off: those
// rows carry auxiliary data whose LSBs differ between embed and extract
// time, and masking keeps both sides' predictions identical.
PredictionContext read_context(const GrayImage& img, int row, int col,
                               int reserved_top_row);

// Mean of the four cross neighbors, rounded up.
int predict_rhombus(const PredictionContext& ctx);

// Median edge detector driven by the lower-left gradient: returns
// min(v3,v4) if u4 >= max(v3,v4), max(v3,v4) if u4 <= min(v3,v4), and
// otherwise v3 + v4 - u4 clamped to [0,255].
int predict_med(const PredictionContext& ctx);

// Mean vertical (first) and horizontal (second) edge intensities over all
// pixels whose 3x3 window fits inside the image. Only their ordering is
// consumed downstream, so the normalization constant is immaterial.
std::pair<double, double> edge_intensities(const GrayImage& img);

// Nonlinear rhombus prediction: six guarded half-means over the cross
// neighbors, evaluated in order; contexts matching no guard fall back to
// predict_rhombus. `i1_ge_i2` is the precomputed edge-intensity ordering.
int predict_nonlinear_rhombus(const PredictionContext& ctx, bool i1_ge_i2);
int predict_nonlinear_rhombus(const PredictionContext& ctx, double i1,
                              double i2);

// Errors of pixel value x under the pair's two predictors. For the
// single-predictor pairs both components are the rhombus error.
DoubleError double_errors(int x, const PredictionContext& ctx, bool i1_ge_i2,
                          PredictorPair pair);

}  // namespace rdh

#endif  // RDH_PREDICTORS_HPP
