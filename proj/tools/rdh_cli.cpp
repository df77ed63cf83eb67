// Command-line front end: reversible embedding/extraction on 8-bit PGM
// images plus a benchmark harness that regenerates the PSNR table and
// compares it against stored reference values.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rdh/bitstream.hpp"
#include "rdh/codec.hpp"
#include "rdh/errors.hpp"
#include "rdh/histograms.hpp"
#include "rdh/image.hpp"
#include "rdh/partition.hpp"
#include "rdh/predictors.hpp"

namespace {

using rdh::EmbedConfig;
using rdh::EmbedStats;
using rdh::GrayImage;

// exit codes: 0 ok, 2 usage, 3 capacity, 4 corruption, 5 I/O
int exit_code_for(const rdh::rdh_error& e) {
  switch (e.code()) {
    case rdh::errc::argument:
      return 2;
    case rdh::errc::capacity:
    case rdh::errc::serialization:
      return 3;
    case rdh::errc::corruption:
      return 4;
    case rdh::errc::io:
    case rdh::errc::decode:
      return 5;
  }
  return 1;
}

std::vector<std::uint8_t> random_bits(std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<std::uint8_t> bits(count);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
  return bits;
}

std::vector<std::uint8_t> read_payload_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw rdh::rdh_error(rdh::errc::io, "cannot open payload file " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return rdh::unpack_bits(
      std::vector<std::uint8_t>(bytes.begin(), bytes.end()),
      bytes.size() * 8);
}

void write_payload_file(const std::string& path,
                        const std::vector<std::uint8_t>& bits) {
  const std::vector<std::uint8_t> bytes = rdh::pack_bits(bits);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw rdh::rdh_error(rdh::errc::io, "cannot open output file " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw rdh::rdh_error(rdh::errc::io, "failed to write " + path);
}

rdh::PredictorPair parse_pair(const std::string& name) {
  if (name == "nonlinear") return rdh::PredictorPair::rhombus_nonlinear;
  if (name == "med") return rdh::PredictorPair::rhombus_med;
  if (name == "rhombus") return rdh::PredictorPair::rhombus_rhombus;
  throw rdh::rdh_error(rdh::errc::argument,
                       "unknown predictor pair '" + name + "'");
}

struct SchemeRun {
  GrayImage stego;
  EmbedStats stats;
};

SchemeRun run_embed(const std::string& scheme, const GrayImage& cover,
                    const std::vector<std::uint8_t>& payload,
                    const EmbedConfig& cfg) {
  SchemeRun run;
  if (scheme == "cpee")
    run.stego = rdh::embed_cpee(cover, payload, &run.stats);
  else if (scheme == "mhm")
    run.stego = rdh::embed_mhm(cover, payload, cfg, &run.stats);
  else if (scheme == "dpeh")
    run.stego = rdh::embed(cover, payload, cfg, &run.stats);
  else
    throw rdh::rdh_error(rdh::errc::argument,
                         "unknown scheme '" + scheme + "'");
  return run;
}

// ----------------------------------------------------------------- reference
// Stored PSNR reference table (dB). Schemes marked with a nonzero tolerance
// are runnable here and get pass/warn verdicts from the bench; the rest are
// published comparison columns kept for context only.
struct ReferenceRow {
  const char* scheme;
  const char* image;
  int capacity;
  double psnr;
  double tol;
};

constexpr double kNoBand = 0.0;

constexpr ReferenceRow kReference[] = {
    {"cpee", "lena", 10000, 57.84, 0.25},
    {"cpee", "baboon", 10000, 50.98, 0.25},
    {"cpee", "barbara", 10000, 55.98, 0.25},
    {"cpee", "boat", 10000, 53.98, 0.25},
    {"cpee", "airplane", 10000, 63.90, 0.25},
    {"cpee", "peppers", 10000, 53.99, 0.25},
    {"cpee", "lena", 20000, 54.31, 0.25},
    {"cpee", "baboon", 20000, 48.68, 0.25},
    {"cpee", "barbara", 20000, 53.52, 0.25},
    {"cpee", "boat", 20000, 50.74, 0.25},
    {"cpee", "airplane", 20000, 55.85, 0.25},
    {"cpee", "peppers", 20000, 50.74, 0.25},
    {"pairwise_pee", "lena", 10000, 59.75, kNoBand},
    {"pairwise_pee", "baboon", 10000, 55.21, kNoBand},
    {"pairwise_pee", "barbara", 10000, 59.48, kNoBand},
    {"pairwise_pee", "boat", 10000, 57.55, kNoBand},
    {"pairwise_pee", "airplane", 10000, 63.76, kNoBand},
    {"pairwise_pee", "peppers", 10000, 56.21, kNoBand},
    {"pairwise_pee", "lena", 20000, 56.21, kNoBand},
    {"pairwise_pee", "baboon", 20000, 49.89, kNoBand},
    {"pairwise_pee", "barbara", 20000, 56.22, kNoBand},
    {"pairwise_pee", "boat", 20000, 53.32, kNoBand},
    {"pairwise_pee", "airplane", 20000, 60.15, kNoBand},
    {"pairwise_pee", "peppers", 20000, 52.83, kNoBand},
    {"mhm", "lena", 10000, 61.03, 0.60},
    {"mhm", "baboon", 10000, 56.22, 0.60},
    {"mhm", "barbara", 10000, 61.41, 0.60},
    {"mhm", "boat", 10000, 58.62, 0.60},
    {"mhm", "airplane", 10000, 63.87, 0.60},
    {"mhm", "peppers", 10000, 59.06, 0.60},
    {"mhm", "lena", 20000, 57.56, 0.60},
    {"mhm", "baboon", 20000, 49.99, 0.60},
    {"mhm", "barbara", 20000, 57.67, 0.60},
    {"mhm", "boat", 20000, 54.58, 0.60},
    {"mhm", "airplane", 20000, 60.55, 0.60},
    {"mhm", "peppers", 20000, 55.12, 0.60},
    {"high_capacity_mhm", "lena", 10000, 61.01, kNoBand},
    {"high_capacity_mhm", "baboon", 10000, 56.23, kNoBand},
    {"high_capacity_mhm", "barbara", 10000, 61.36, kNoBand},
    {"high_capacity_mhm", "boat", 10000, 58.65, kNoBand},
    {"high_capacity_mhm", "airplane", 10000, 63.89, kNoBand},
    {"high_capacity_mhm", "peppers", 10000, 59.07, kNoBand},
    {"high_capacity_mhm", "lena", 20000, 57.55, kNoBand},
    {"high_capacity_mhm", "baboon", 20000, 50.96, kNoBand},
    {"high_capacity_mhm", "barbara", 20000, 57.68, kNoBand},
    {"high_capacity_mhm", "boat", 20000, 54.76, kNoBand},
    {"high_capacity_mhm", "airplane", 20000, 60.49, kNoBand},
    {"high_capacity_mhm", "peppers", 20000, 55.25, kNoBand},
    {"optimal_mhm", "lena", 10000, 61.04, kNoBand},
    {"optimal_mhm", "baboon", 10000, 56.25, kNoBand},
    {"optimal_mhm", "barbara", 10000, 61.67, kNoBand},
    {"optimal_mhm", "boat", 10000, 58.97, kNoBand},
    {"optimal_mhm", "airplane", 10000, 63.90, kNoBand},
    {"optimal_mhm", "peppers", 10000, 59.37, kNoBand},
    {"optimal_mhm", "lena", 20000, 57.64, kNoBand},
    {"optimal_mhm", "baboon", 20000, 50.41, kNoBand},
    {"optimal_mhm", "barbara", 20000, 57.79, kNoBand},
    {"optimal_mhm", "boat", 20000, 54.85, kNoBand},
    {"optimal_mhm", "airplane", 20000, 60.60, kNoBand},
    {"optimal_mhm", "peppers", 20000, 55.37, kNoBand},
    {"mhm_pre", "lena", 10000, 61.33, kNoBand},
    {"mhm_pre", "baboon", 10000, 56.90, kNoBand},
    {"mhm_pre", "barbara", 10000, 61.83, kNoBand},
    {"mhm_pre", "boat", 10000, 59.10, kNoBand},
    {"mhm_pre", "airplane", 10000, 64.26, kNoBand},
    {"mhm_pre", "peppers", 10000, 59.60, kNoBand},
    {"mhm_pre", "lena", 20000, 57.79, kNoBand},
    {"mhm_pre", "baboon", 20000, 50.89, kNoBand},
    {"mhm_pre", "barbara", 20000, 57.96, kNoBand},
    {"mhm_pre", "boat", 20000, 55.03, kNoBand},
    {"mhm_pre", "airplane", 20000, 60.75, kNoBand},
    {"mhm_pre", "peppers", 20000, 55.55, kNoBand},
    {"dpeh", "lena", 10000, 61.68, 0.60},
    {"dpeh", "baboon", 10000, 57.52, 0.60},
    {"dpeh", "barbara", 10000, 62.10, 0.60},
    {"dpeh", "boat", 10000, 60.16, 0.60},
    {"dpeh", "airplane", 10000, 64.25, 0.60},
    {"dpeh", "peppers", 10000, 60.22, 0.60},
    {"dpeh", "lena", 20000, 57.98, 0.60},
    {"dpeh", "baboon", 20000, 52.17, 0.60},
    {"dpeh", "barbara", 20000, 58.25, 0.60},
    {"dpeh", "boat", 20000, 55.96, 0.60},
    {"dpeh", "airplane", 20000, 60.75, 0.60},
    {"dpeh", "peppers", 20000, 56.12, 0.60},
};

const ReferenceRow* find_reference(const std::string& scheme,
                                   const std::string& image, int capacity) {
  for (const ReferenceRow& r : kReference)
    if (scheme == r.scheme && image == r.image && capacity == r.capacity)
      return &r;
  return nullptr;
}

std::string reference_csv() {
  std::ostringstream os;
  os << "scheme,image,capacity_bits,psnr_db,tol_db\n";
  char line[128];
  for (const ReferenceRow& r : kReference) {
    std::snprintf(line, sizeof line, "%s,%s,%d,%.2f,%.2f\n", r.scheme,
                  r.image, r.capacity, r.psnr, r.tol);
    os << line;
  }
  return os.str();
}

// ----------------------------------------------------------------- commands

struct EmbedArgs {
  std::string cover;
  std::string out;
  std::string payload_file;
  long long random_bits_count = -1;
  std::uint32_t seed = 1;
  std::string scheme = "dpeh";
  std::string pair = "nonlinear";
  int classes = 16;
  int hmin = 20;
  int delta = 2000;
  std::string objective = "distortion";
};

int cmd_embed(const EmbedArgs& a) {
  const GrayImage cover = rdh::load_image_file(a.cover);
  std::vector<std::uint8_t> payload;
  if (!a.payload_file.empty())
    payload = read_payload_file(a.payload_file);
  else if (a.random_bits_count >= 0)
    payload = random_bits(static_cast<std::size_t>(a.random_bits_count),
                          a.seed);
  else
    throw rdh::rdh_error(rdh::errc::argument,
                         "either --payload or --random-bits is required");

  EmbedConfig cfg;
  cfg.pair = parse_pair(a.pair);
  cfg.m = a.classes;
  cfg.hmin = a.hmin;
  cfg.delta = a.delta;
  cfg.objective = a.objective == "ratio"
                      ? rdh::Objective::min_distortion_ratio
                      : rdh::Objective::min_total_distortion;

  const SchemeRun run = run_embed(a.scheme, cover, payload, cfg);
  rdh::save_image_file(run.stego, a.out);

  std::printf("scheme=%s\n", a.scheme.c_str());
  std::printf("payload_bits=%zu\n", run.stats.payload_bits);
  std::printf("realized_ec=%zu\n", run.stats.payload_bits);
  std::printf("ed_star=%lld\n", run.stats.layers[0].planned_ed2 +
                                    run.stats.layers[1].planned_ed2);
  std::printf("aux_bits=%zu\n", run.stats.aux_bits);
  std::printf("reserved_rows=%d\n", run.stats.reserved_rows);
  std::printf("psnr=%.6f\n", rdh::psnr(cover, run.stego));
  std::printf("out=%s\n", a.out.c_str());
  return 0;
}

struct ExtractArgs {
  std::string stego;
  std::string out_cover;
  std::string out_payload;
};

int cmd_extract(const ExtractArgs& a) {
  const GrayImage stego = rdh::load_image_file(a.stego);
  auto [payload, cover] = rdh::extract(stego);
  if (!a.out_cover.empty()) rdh::save_image_file(cover, a.out_cover);
  if (!a.out_payload.empty()) write_payload_file(a.out_payload, payload);
  std::printf("payload_bits=%zu\n", payload.size());
  return 0;
}

struct BenchArgs {
  std::string image_dir;
  std::vector<std::string> names = {"lena", "baboon",   "barbara",
                                    "boat", "airplane", "peppers"};
  std::vector<std::string> schemes = {"cpee", "mhm", "dpeh"};
  std::vector<int> capacities = {10000, 20000};
  std::uint32_t seed = 1;
  std::string out;
  int jobs = 0;
};

struct BenchRow {
  std::string image;
  std::string scheme;
  int capacity = 0;
  std::size_t realized_ec = 0;
  double psnr = 0.0;
  std::size_t aux_bits = 0;
  long long ms_embed = 0;
  long long ms_extract = 0;
  std::string error;  // nonempty = run failed
};

BenchRow bench_one(const std::string& dir, const std::string& name,
                   const std::string& scheme, int capacity,
                   std::uint32_t seed) {
  BenchRow row;
  row.image = name;
  row.scheme = scheme;
  row.capacity = capacity;
  try {
    const GrayImage cover = rdh::load_image_file(dir + "/" + name + ".pgm");
    const std::vector<std::uint8_t> payload =
        random_bits(static_cast<std::size_t>(capacity), seed);
    EmbedConfig cfg;  // defaults; cpee/mhm wrappers adjust as needed

    const auto t0 = std::chrono::steady_clock::now();
    const SchemeRun run = run_embed(scheme, cover, payload, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const auto [extracted, recovered] = rdh::extract(run.stego);
    const auto t2 = std::chrono::steady_clock::now();

    if (extracted != payload)
      throw rdh::rdh_error(rdh::errc::corruption,
                           "round-trip payload mismatch");
    if (!(recovered == cover))
      throw rdh::rdh_error(rdh::errc::corruption,
                           "round-trip cover mismatch");

    row.realized_ec = run.stats.payload_bits;
    row.psnr = rdh::psnr(cover, run.stego);
    row.aux_bits = run.stats.aux_bits;
    row.ms_embed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       t1 - t0)
                       .count();
    row.ms_extract = std::chrono::duration_cast<std::chrono::milliseconds>(
                         t2 - t1)
                         .count();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

int cmd_bench(const BenchArgs& a) {
  std::string dir = a.image_dir;
  if (dir.empty()) {
    const char* env = std::getenv("RDH_IMAGE_DIR");
    dir = env != nullptr ? env : "data/images";
  }

  struct Combo {
    std::string name, scheme;
    int capacity;
  };
  std::vector<Combo> combos;
  for (const auto& name : a.names)
    for (const auto& scheme : a.schemes)
      for (const int capacity : a.capacities)
        combos.push_back({name, scheme, capacity});

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t jobs =
      a.jobs > 0 ? static_cast<std::size_t>(a.jobs)
                 : std::min<std::size_t>(hw, 6);

  // Fixed-size worker pool over the combo list; rows keep combo order so the
  // CSV is deterministic regardless of completion order.
  std::vector<BenchRow> rows(combos.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < combos.size();
         i = next.fetch_add(1)) {
      const Combo& c = combos[i];
      rows[i] = bench_one(dir, c.name, c.scheme, c.capacity, a.seed);
      const BenchRow& r = rows[i];
      std::ostringstream line;
      line << "run image=" << r.image << " scheme=" << r.scheme
           << " capacity=" << r.capacity;
      if (r.error.empty())
        line << " psnr=" << r.psnr << " ms_embed=" << r.ms_embed;
      else
        line << " error=" << r.error;
      line << '\n';
      std::cerr << line.str();  // single write keeps lines intact
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(jobs, combos.size()); ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "image,scheme,capacity_bits,realized_ec,psnr_db,aux_bits,ms_embed,"
         "ms_extract\n";
  bool failed = false;
  for (const BenchRow& r : rows) {
    if (!r.error.empty()) {
      failed = true;  // no PSNR row for a failed round-trip
      continue;
    }
    char line[256];
    std::snprintf(line, sizeof line, "%s,%s,%d,%zu,%.4f,%zu,%lld,%lld\n",
                  r.image.c_str(), r.scheme.c_str(), r.capacity,
                  r.realized_ec, r.psnr, r.aux_bits, r.ms_embed,
                  r.ms_extract);
    csv << line;
  }

  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::trunc);
    if (!out)
      throw rdh::rdh_error(rdh::errc::io, "cannot open " + a.out);
    out << csv.str();
  } else {
    std::cout << csv.str();
  }

  // comparison against the stored reference values
  for (const BenchRow& r : rows) {
    if (!r.error.empty()) continue;
    const ReferenceRow* ref = find_reference(r.scheme, r.image, r.capacity);
    if (ref == nullptr || ref->tol == kNoBand) continue;
    const double diff = r.psnr - ref->psnr;
    std::printf(
        "check image=%s scheme=%s capacity=%d measured=%.2f reference=%.2f "
        "diff=%+.2f tol=%.2f verdict=%s\n",
        r.image.c_str(), r.scheme.c_str(), r.capacity, r.psnr, ref->psnr,
        diff, ref->tol, std::abs(diff) <= ref->tol ? "pass" : "warn");
  }

  for (const BenchRow& r : rows)
    if (!r.error.empty())
      std::fprintf(stderr, "failed image=%s scheme=%s capacity=%d: %s\n",
                   r.image.c_str(), r.scheme.c_str(), r.capacity,
                   r.error.c_str());
  return failed ? 4 : 0;
}

struct DumpHistArgs {
  std::string cover;
  std::string out;
  int classes = 16;
  std::string pair = "nonlinear";
};

int cmd_dump_hist(const DumpHistArgs& a) {
  const GrayImage img = rdh::load_image_file(a.cover);
  const auto [first, second] = rdh::partition(img, 2);
  const int reserved_top = img.height - 2;

  bool i1_ge_i2 = true;
  const rdh::PredictorPair pair = parse_pair(a.pair);
  if (pair == rdh::PredictorPair::rhombus_nonlinear) {
    const auto [i1, i2] = rdh::edge_intensities(img);
    i1_ge_i2 = i1 >= i2;
  }
  std::vector<rdh::ErrorSample> samples;
  samples.reserve(first.cells.size());
  for (const auto& [r, c] : first.cells) {
    const rdh::PredictionContext ctx =
        rdh::read_context(img, r, c, reserved_top);
    samples.push_back(
        {rdh::double_errors(img.at(r, c), ctx, i1_ge_i2, pair),
         rdh::complexity(ctx, rdh::predict_rhombus(ctx))});
  }
  rdh::Thresholds th;
  if (a.classes > 1) {
    std::vector<int> comp;
    comp.reserve(samples.size());
    for (const auto& s : samples) comp.push_back(s.complexity);
    th = rdh::thresholds(comp, a.classes);
  }
  std::ostringstream os;
  os << "t,e1,e2,count\n";
  for (const rdh::Dpeh2D& h : rdh::build_dpehs(samples, th))
    os << rdh::dump_histogram_csv(h);

  if (!a.out.empty()) {
    std::ofstream out(a.out, std::ios::trunc);
    if (!out)
      throw rdh::rdh_error(rdh::errc::io, "cannot open " + a.out);
    out << os.str();
  } else {
    std::cout << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible data hiding on grayscale PGM images"};
  app.require_subcommand(1);

  EmbedArgs ea;
  CLI::App* embed = app.add_subcommand("embed", "Embed a payload reversibly");
  embed->add_option("--cover", ea.cover, "Cover image (PGM)")->required();
  embed->add_option("--out", ea.out, "Stego output path")->required();
  embed->add_option("--payload", ea.payload_file,
                    "Payload file (all bytes embedded)");
  embed->add_option("--random-bits", ea.random_bits_count,
                    "Embed N seeded random bits instead of a file");
  embed->add_option("--seed", ea.seed, "Random payload seed (default 1)");
  embed->add_option("--scheme", ea.scheme, "cpee | mhm | dpeh (default)");
  embed->add_option("--pair", ea.pair,
                    "dpeh predictor pair: nonlinear (default) | med | rhombus");
  embed->add_option("--classes", ea.classes, "Complexity class count M");
  embed->add_option("--hmin", ea.hmin, "Minimum line mass H");
  embed->add_option("--delta", ea.delta, "DP capacity search margin");
  embed->add_option("--objective", ea.objective, "distortion | ratio");

  ExtractArgs xa;
  CLI::App* extract =
      app.add_subcommand("extract", "Recover payload and original cover");
  extract->add_option("--stego", xa.stego, "Stego image (PGM)")->required();
  extract->add_option("--out-cover", xa.out_cover, "Recovered cover path");
  extract->add_option("--out-payload", xa.out_payload,
                      "Recovered payload path (packed bits)");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand(
      "bench", "Embed+extract a scheme/capacity grid, emit CSV");
  bench->add_option("--images", ba.image_dir,
                    "Image directory (default $RDH_IMAGE_DIR or data/images)");
  bench->add_option("--names", ba.names, "Image base names (no .pgm)")
      ->delimiter(',');
  bench->add_option("--schemes", ba.schemes, "Schemes to run")
      ->delimiter(',');
  bench->add_option("--capacities", ba.capacities, "Payload sizes in bits")
      ->delimiter(',');
  bench->add_option("--seed", ba.seed, "Payload seed (default 1)");
  bench->add_option("--out", ba.out, "CSV output path (default stdout)");
  bench->add_option("--jobs", ba.jobs, "Worker threads (default auto)");

  DumpHistArgs da;
  CLI::App* dump = app.add_subcommand(
      "dump-hist", "Dump first-layer 2D error histograms as CSV");
  dump->add_option("--cover", da.cover, "Cover image (PGM)")->required();
  dump->add_option("--out", da.out, "CSV output path (default stdout)");
  dump->add_option("--classes", da.classes, "Complexity class count M");
  dump->add_option("--pair", da.pair, "nonlinear | med | rhombus");

  std::string ref_out;
  CLI::App* dumpref = app.add_subcommand(
      "dump-reference", "Write the stored PSNR reference table as CSV");
  dumpref->add_option("--out", ref_out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (embed->parsed()) return cmd_embed(ea);
    if (extract->parsed()) return cmd_extract(xa);
    if (bench->parsed()) return cmd_bench(ba);
    if (dump->parsed()) return cmd_dump_hist(da);
    if (dumpref->parsed()) {
      if (!ref_out.empty()) {
        std::ofstream out(ref_out, std::ios::trunc);
        if (!out)
          throw rdh::rdh_error(rdh::errc::io, "cannot open " + ref_out);
        out << reference_csv();
      } else {
        std::cout << reference_csv();
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const rdh::rdh_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
