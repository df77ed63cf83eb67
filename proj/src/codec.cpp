#include "rdh/codec.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "rdh/bitstream.hpp"
#include "rdh/errors.hpp"
#include "rdh/histograms.hpp"
#include "rdh/location_map.hpp"
#include "rdh/partition.hpp"

namespace rdh {

namespace {

using BinMap = std::map<std::pair<int, int>, std::pair<int, int>>;
using Cells = std::vector<std::pair<int, int>>;

constexpr std::size_t kAuxFieldCap = 1023;  // limit of the 10-bit size field
constexpr std::size_t kSizeFieldBits = 10;

// Auxiliary-size squeeze: per-active-line distortion penalties (half-units)
// tried in order until the serialized side information fits its budget.
constexpr long long kLambdaSchedule[] = {0, 8, 32, 128, 512, 2048, 8192};

// Auxiliary bit k lives in the LSB of pixel (height-1 - k/width, k%width):
// the bottom row fills left to right first, then the row above, and so on.
// The 10-bit size field therefore sits at a fixed location, and the decoder
// infers the reserved-row count from the size alone.

int aux_rows_needed(std::size_t s_aux, int width) {
  return std::max<int>(
      2, static_cast<int>((s_aux + static_cast<std::size_t>(width) - 1) /
                          static_cast<std::size_t>(width)));
}

std::vector<std::uint8_t> read_reserved_lsbs(const GrayImage& img,
                                             std::size_t count) {
  std::vector<std::uint8_t> bits(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int r = img.height - 1 - static_cast<int>(k / img.width);
    const int c = static_cast<int>(k % img.width);
    bits[k] = img.at(r, c) & 1;
  }
  return bits;
}

void write_reserved_lsbs(GrayImage& img, const std::vector<std::uint8_t>& bits) {
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const int r = img.height - 1 - static_cast<int>(k / img.width);
    const int c = static_cast<int>(k % img.width);
    std::uint8_t& px = img.at(r, c);
    px = static_cast<std::uint8_t>((px & ~1) | bits[k]);
  }
}

// Per-cell errors and complexities of one layer against the current image
// state, plus the edge-intensity ordering captured at the start of the pass.
struct Prepass {
  std::vector<ErrorSample> samples;
  bool i1_ge_i2 = true;
};

Prepass run_prepass(const GrayImage& img, const Cells& cells,
                    PredictorPair pair, int reserved_top) {
  Prepass pre;
  if (pair == PredictorPair::rhombus_nonlinear) {
    const auto [i1, i2] = edge_intensities(img);
    pre.i1_ge_i2 = i1 >= i2;
  }
  pre.samples.reserve(cells.size());
  for (const auto& [r, c] : cells) {
    const PredictionContext ctx = read_context(img, r, c, reserved_top);
    pre.samples.push_back(
        {double_errors(img.at(r, c), ctx, pre.i1_ge_i2, pair),
         complexity(ctx, predict_rhombus(ctx))});
  }
  return pre;
}

BinMap plan_to_map(const BinPlan& plan) {
  BinMap map;
  for (const BinAssignment& a : plan.assignments)
    if (!a.is_noop()) map[{a.t, a.b}] = {a.left, a.right};
  return map;
}

struct ApplyResult {
  std::size_t consumed = 0;
  std::uint32_t n_end = 0;  // 1-based index of the last bit-consuming cell
};

// Walks the layer in raster order, modifying each cell by its line's plan
// (expand at the bins, shift beyond them) and consuming one payload bit per
// expansion cell, until the bits run out. Cells past the last consumer are
// left untouched so the decoder can stop at n_end.
ApplyResult apply_layer(GrayImage& img, const Cells& cells,
                        const Thresholds& th, PredictorPair pair,
                        bool i1_ge_i2, const BinMap& bins,
                        const std::vector<std::uint8_t>& bits,
                        int reserved_top) {
  ApplyResult res;
  for (std::size_t i = 0; i < cells.size() && res.consumed < bits.size();
       ++i) {
    const auto [r, c] = cells[i];
    const PredictionContext ctx = read_context(img, r, c, reserved_top);
    int x = img.at(r, c);
    const DoubleError de = double_errors(x, ctx, i1_ge_i2, pair);
    const auto it = bins.find(
        {th.class_of(complexity(ctx, predict_rhombus(ctx))), de.e2 - de.e1});
    if (it == bins.end()) continue;
    const auto [left, right] = it->second;
    if (left != kNegInf && de.e1 == left) {
      x -= bits[res.consumed++];
      res.n_end = static_cast<std::uint32_t>(i + 1);
    } else if (right != kPosInf && de.e1 == right) {
      x += bits[res.consumed++];
      res.n_end = static_cast<std::uint32_t>(i + 1);
    } else if (left != kNegInf && de.e1 < left) {
      x -= 1;
    } else if (right != kPosInf && de.e1 > right) {
      x += 1;
    } else {
      continue;  // strictly inside (left, right): carries nothing
    }
    assert(x >= 0 && x <= 255);  // guaranteed by saturation preprocessing
    img.at(r, c) = static_cast<std::uint8_t>(x);
  }
  return res;
}

// Exact inverse of apply_layer: walks cells n_end..1 in reverse, restores
// each modified pixel, and emits the embedded bits in reverse order.
std::vector<std::uint8_t> unapply_layer(GrayImage& img, const Cells& cells,
                                        const Thresholds& th,
                                        PredictorPair pair, bool i1_ge_i2,
                                        const BinMap& bins,
                                        std::uint32_t n_end,
                                        int reserved_top) {
  if (n_end > cells.size())
    throw rdh_error(errc::corruption,
                    "stop index exceeds the layer's cell count");
  std::vector<std::uint8_t> reversed;
  for (std::size_t i = n_end; i-- > 0;) {
    const auto [r, c] = cells[i];
    const PredictionContext ctx = read_context(img, r, c, reserved_top);
    int x = img.at(r, c);
    const DoubleError de = double_errors(x, ctx, i1_ge_i2, pair);
    const auto it = bins.find(
        {th.class_of(complexity(ctx, predict_rhombus(ctx))), de.e2 - de.e1});
    if (it == bins.end()) continue;
    const auto [left, right] = it->second;
    const int e1 = de.e1;
    if (left != kNegInf && e1 < left - 1) {
      x += 1;
    } else if (left != kNegInf && e1 == left - 1) {
      reversed.push_back(1);
      x += 1;
    } else if (left != kNegInf && e1 == left) {
      reversed.push_back(0);
    } else if (right != kPosInf && e1 == right) {
      reversed.push_back(0);
    } else if (right != kPosInf && e1 == right + 1) {
      reversed.push_back(1);
      x -= 1;
    } else if (right != kPosInf && e1 > right + 1) {
      x -= 1;
    } else {
      continue;
    }
    if (x < 0 || x > 255)
      throw rdh_error(errc::corruption, "recovered pixel out of [0,255]");
    img.at(r, c) = static_cast<std::uint8_t>(x);
  }
  return reversed;
}

// The classic baseline needs no optimization: bins are pinned at (-1, 0) on
// the single class's b = 0 line, and every other error shifts.
BinPlan classic_plan(const std::vector<Dpeh2D>& hists, long long target) {
  long long ec = 0;
  long long shifted = 0;
  if (!hists.empty()) {
    const auto it = hists[0].line_index.find(0);
    if (it != hists[0].line_index.end()) {
      for (const LinePoint& p : it->second) {
        if (p.e1 == -1 || p.e1 == 0)
          ec += p.count;
        else
          shifted += p.count;
      }
    }
  }
  if (ec < target)
    throw capacity_error("fixed expansion bins reach only " +
                             std::to_string(ec) + " of the requested " +
                             std::to_string(target) + " bits",
                         ec);
  BinPlan plan;
  plan.assignments.push_back({0, 0, -1, 0});
  plan.ec_star = ec;
  plan.ed2_star = ec + 2 * shifted;
  return plan;
}

// Plans one layer's bins for `target` bits. lambda2 > 0 penalizes every
// candidate by a flat amount so the optimum activates fewer lines (smaller
// auxiliary data); the returned distortion strips the penalty again.
BinPlan plan_layer(const std::vector<Dpeh2D>& hists, const EmbedConfig& cfg,
                   long long target, long long lambda2) {
  if (cfg.pair == PredictorPair::classic_fixed_bins)
    return classic_plan(hists, target);
  std::vector<ChoiceGroup> groups = build_choice_groups(hists, cfg.hmin);
  if (lambda2 > 0)
    for (ChoiceGroup& g : groups)
      for (BinChoice& c : g.choices) c.ed2 += lambda2;
  BinPlan plan = dp_forward_rolling(groups, target, cfg.delta, cfg.objective);
  if (lambda2 > 0) {
    long long active = 0;
    for (const BinAssignment& a : plan.assignments)
      if (!a.is_noop()) ++active;
    plan.ed2_star -= lambda2 * active;
  }
  return plan;
}

struct Attempt {
  bool aux_fits = false;
  std::size_t s_aux = 0;
  GrayImage stego;
  LayerReport rep[2];
};

// One full embedding attempt at a fixed reserved-row count. Returns with
// aux_fits == false when even the strongest squeeze leaves the side
// information over budget (the caller then reserves more rows or fails).
Attempt attempt_embed(const GrayImage& base,
                      const std::vector<std::uint8_t>& payload,
                      const EmbedConfig& cfg,
                      const std::vector<std::uint8_t>& clm_bits,
                      int reserved_rows) {
  const int w = base.width;
  const auto [first, second] = partition(base, reserved_rows);
  const int reserved_top = base.height - reserved_rows;
  const std::size_t budget = std::min<std::size_t>(
      kAuxFieldCap, static_cast<std::size_t>(reserved_rows) * w);

  const std::size_t p1 = (payload.size() + 1) / 2;
  const std::size_t p2 = payload.size() - p1;
  const std::vector<std::uint8_t> payload1(payload.begin(),
                                           payload.begin() + p1);
  const std::vector<std::uint8_t> payload2(payload.begin() + p1,
                                           payload.end());

  const Prepass pre1 = run_prepass(base, first.cells, cfg.pair, reserved_top);
  Thresholds th;
  if (cfg.m > 1) {
    std::vector<int> comp;
    comp.reserve(pre1.samples.size());
    for (const ErrorSample& s : pre1.samples) comp.push_back(s.complexity);
    th = thresholds(comp, cfg.m);
  }
  const std::vector<Dpeh2D> hists1 = build_dpehs(pre1.samples, th);

  // With a single class nothing can drift between prepass and apply; with
  // several, a cell's complexity class may move when an earlier same-layer
  // context pixel was modified, so plans get a margin and a retry loop.
  const bool drifts = cfg.m > 1;

  Attempt out;
  for (long long lambda2 : kLambdaSchedule) {
    // Layer 1: plan against the prepass histograms, then verify the
    // realized capacity actually covered the payload share.
    BinPlan plan1;
    GrayImage img1;
    std::uint32_t n1 = 0;
    long long margin1 =
        (drifts && p1 > 0) ? std::max<long long>(32, p1 / 64) : 0;
    for (int round = 0;; ++round) {
      plan1 = plan_layer(hists1, cfg,
                         p1 > 0 ? static_cast<long long>(p1) + margin1 : 0,
                         lambda2);
      img1 = base;
      const ApplyResult ar =
          apply_layer(img1, first.cells, th, cfg.pair, pre1.i1_ge_i2,
                      plan_to_map(plan1), payload1, reserved_top);
      if (ar.consumed == payload1.size()) {
        n1 = ar.n_end;
        break;
      }
      if (round == 2)
        throw capacity_error(
            "first layer realized only " + std::to_string(ar.consumed) +
                " of " + std::to_string(payload1.size()) + " payload bits",
            static_cast<long long>(ar.consumed));
      margin1 = margin1 > 0 ? margin1 * 4 : 32;
    }

    // Layer 2 sees the post-layer-1 state.
    const Prepass pre2 =
        run_prepass(img1, second.cells, cfg.pair, reserved_top);
    const std::vector<Dpeh2D> hists2 = build_dpehs(pre2.samples, th);

    AuxInfo aux;
    aux.codec_id = 0;
    aux.m = cfg.m;
    aux.hmin = cfg.hmin;
    aux.delta = cfg.delta;
    aux.pair = cfg.pair;
    aux.thresholds = th;
    aux.layers[0].i1_ge_i2 = pre1.i1_ge_i2;
    aux.layers[0].bins = plan_to_map(plan1);
    aux.layers[0].clm_bits = clm_bits;
    aux.layers[1].i1_ge_i2 = pre2.i1_ge_i2;

    // Fixed point between the auxiliary size and the layer-2 plan: the
    // layer re-embeds the s_aux reserved LSBs the auxiliary data displaces,
    // so its capacity target depends on the serialized size of its own
    // plan. Guesses only grow, so the loop settles or gives up quickly.
    const std::size_t min_for_rows =
        reserved_rows > 2
            ? static_cast<std::size_t>(reserved_rows - 1) * w + 1
            : 0;
    std::size_t guess = std::max(aux_bit_size(aux), min_for_rows);
    long long margin2 =
        drifts ? std::max<long long>(32, static_cast<long long>(p2 + guess) / 64)
               : 0;
    BinPlan plan2;
    GrayImage img2;
    std::uint32_t n2 = 0;
    std::size_t s_final = 0;
    bool settled = false;
    for (int round = 0; round < 12 && !settled; ++round) {
      plan2 = plan_layer(
          hists2, cfg, static_cast<long long>(p2 + guess) + margin2, lambda2);
      aux.layers[1].bins = plan_to_map(plan2);
      aux.layers[1].clm_bits.clear();
      const std::size_t s_raw = aux_bit_size(aux);
      const std::size_t s_eff = std::max(s_raw, min_for_rows);
      if (s_eff > guess) {
        guess = s_eff;
        continue;
      }
      std::vector<std::uint8_t> bits2 = payload2;
      const std::vector<std::uint8_t> s_lsb = read_reserved_lsbs(img1, s_eff);
      bits2.insert(bits2.end(), s_lsb.begin(), s_lsb.end());
      img2 = img1;
      const ApplyResult ar =
          apply_layer(img2, second.cells, th, cfg.pair, pre2.i1_ge_i2,
                      aux.layers[1].bins, bits2, reserved_top);
      if (ar.consumed != bits2.size()) {
        if (!drifts)
          throw capacity_error(
              "second layer realized only " + std::to_string(ar.consumed) +
                  " of " + std::to_string(bits2.size()) + " bits",
              static_cast<long long>(ar.consumed));
        margin2 = margin2 > 0 ? margin2 * 4 : 32;
        continue;
      }
      n2 = ar.n_end;
      // Zero padding keeps the decoder's inferred row count equal to ours.
      aux.layers[1].clm_bits.assign(s_eff - s_raw, 0);
      s_final = s_eff;
      settled = true;
    }
    if (!settled)
      throw capacity_error("layer-2 plan and auxiliary size did not settle",
                           0);

    aux.layers[0].n_end = n1;
    aux.layers[1].n_end = n2;
    out.s_aux = s_final;
    out.rep[0] = {plan1.ec_star, plan1.ed2_star, n1};
    out.rep[1] = {plan2.ec_star, plan2.ed2_star, n2};
    if (s_final <= budget) {
      const std::vector<std::uint8_t> aux_bits = serialize_aux(aux);
      assert(aux_bits.size() == s_final);
      write_reserved_lsbs(img2, aux_bits);
      out.stego = std::move(img2);
      out.aux_fits = true;
      return out;
    }
  }
  return out;
}

}  // namespace

GrayImage embed(const GrayImage& cover, const std::vector<std::uint8_t>& payload,
                const EmbedConfig& cfg, EmbedStats* stats) {
  if (cfg.m < 1 || cfg.m > 64)
    throw rdh_error(errc::argument, "class count must be in 1..64");
  if (cfg.hmin < 0 || cfg.hmin > 255)
    throw rdh_error(errc::argument, "hmin must fit 8 bits");
  if (cfg.delta < 0 || cfg.delta > 4095)
    throw rdh_error(errc::argument, "delta must fit 12 bits");
  if (cfg.pair == PredictorPair::classic_fixed_bins && cfg.m != 1)
    throw rdh_error(errc::argument,
                    "the fixed-bin scheme uses a single histogram (m = 1)");
  for (const std::uint8_t b : payload)
    if (b > 1)
      throw rdh_error(errc::argument,
                      "payload must be a bit sequence of 0/1 values");

  auto [base, map] = preprocess_saturation(cover);
  const std::vector<std::uint8_t> clm_bits =
      encode_location_map(map, base.pixel_count());

  int rows = 2;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (rows > base.height - 3)
      throw capacity_error(
          "auxiliary data does not fit the reservable rows of a " +
              std::to_string(base.width) + "x" +
              std::to_string(base.height) + " image",
          0);
    const Attempt res = attempt_embed(base, payload, cfg, clm_bits, rows);
    if (res.aux_fits) {
      assert(aux_rows_needed(res.s_aux, base.width) == rows);
      if (stats) {
        stats->payload_bits = payload.size();
        stats->aux_bits = res.s_aux;
        stats->reserved_rows = rows;
        stats->layers[0] = res.rep[0];
        stats->layers[1] = res.rep[1];
      }
      return res.stego;
    }
    if (res.s_aux > kAuxFieldCap)
      throw rdh_error(errc::serialization,
                      "auxiliary information exceeds its 10-bit size field (" +
                          std::to_string(res.s_aux) + " bits)");
    rows = std::max(rows + 1, aux_rows_needed(res.s_aux, base.width));
  }
  throw rdh_error(errc::serialization,
                  "auxiliary information budget did not stabilize");
}

std::pair<std::vector<std::uint8_t>, GrayImage> extract(
    const GrayImage& stego) {
  const int w = stego.width;
  const int h = stego.height;
  if (w < 6 || h < 7)
    throw rdh_error(errc::argument, "image too small to carry embedded data");

  BitReader size_reader(read_reserved_lsbs(stego, kSizeFieldBits));
  const auto s_aux =
      static_cast<std::size_t>(size_reader.get_uint(kSizeFieldBits));
  if (s_aux < kSizeFieldBits + 16)
    throw rdh_error(errc::corruption, "auxiliary size field too small");
  const int rows = aux_rows_needed(s_aux, w);
  if (rows > h - 3)
    throw rdh_error(errc::corruption,
                    "auxiliary size implies more reserved rows than fit");
  const AuxInfo aux = deserialize_aux(read_reserved_lsbs(stego, s_aux));

  GrayImage work = stego;
  const auto [first, second] = partition(work, rows);
  const int reserved_top = h - rows;

  // Layers are undone in reverse embedding order: second, then first.
  std::vector<std::uint8_t> seq2 =
      unapply_layer(work, second.cells, aux.thresholds, aux.pair,
                    aux.layers[1].i1_ge_i2, aux.layers[1].bins,
                    aux.layers[1].n_end, reserved_top);
  std::reverse(seq2.begin(), seq2.end());
  if (seq2.size() < s_aux)
    throw rdh_error(errc::corruption,
                    "second layer carries fewer bits than the auxiliary size");

  // The tail of the layer-2 stream is the displaced reserved-row LSBs.
  const std::vector<std::uint8_t> s_lsb(seq2.end() - s_aux, seq2.end());
  seq2.resize(seq2.size() - s_aux);
  GrayImage restored = work;
  write_reserved_lsbs(restored, s_lsb);

  std::vector<std::uint8_t> payload =
      unapply_layer(restored, first.cells, aux.thresholds, aux.pair,
                    aux.layers[0].i1_ge_i2, aux.layers[0].bins,
                    aux.layers[0].n_end, reserved_top);
  std::reverse(payload.begin(), payload.end());
  payload.insert(payload.end(), seq2.begin(), seq2.end());

  const LocationMap map =
      decode_location_map(aux.layers[0].clm_bits, restored.pixel_count());
  return {std::move(payload), postprocess_saturation(restored, map)};
}

GrayImage embed_cpee(const GrayImage& cover,
                     const std::vector<std::uint8_t>& payload,
                     EmbedStats* stats) {
  EmbedConfig cfg;
  cfg.pair = PredictorPair::classic_fixed_bins;
  cfg.m = 1;
  cfg.hmin = 0;
  cfg.delta = 0;
  return embed(cover, payload, cfg, stats);
}

std::pair<std::vector<std::uint8_t>, GrayImage> extract_cpee(
    const GrayImage& stego) {
  return extract(stego);
}

GrayImage embed_mhm(const GrayImage& cover,
                    const std::vector<std::uint8_t>& payload,
                    const EmbedConfig& cfg, EmbedStats* stats) {
  EmbedConfig mhm = cfg;
  mhm.pair = PredictorPair::rhombus_rhombus;
  return embed(cover, payload, mhm, stats);
}

std::pair<std::vector<std::uint8_t>, GrayImage> extract_mhm(
    const GrayImage& stego) {
  return extract(stego);
}

}  // namespace rdh
