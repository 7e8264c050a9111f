// Copyright 2026 The AFD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite. Prints one PASS/FAIL line per criterion; with a
// criterion name as argument only that one runs. Exit status is non-zero
// if any selected criterion fails.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "afd/audit.hpp"
#include "afd/error.hpp"
#include "afd/flow_estimate.hpp"
#include "afd/flow_io.hpp"
#include "afd/image_io.hpp"
#include "afd/noise.hpp"
#include "afd/pipeline.hpp"
#include "afd/subset.hpp"
#include "afd/warp.hpp"
#include "oracles.hpp"

namespace afd {
namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

Outcome warp_oracle() {
  std::mt19937 rng(20260);
  std::uniform_int_distribution<int> side(1, 64);
  int mismatches = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = side(rng);
    const int h = side(rng);
    const Frame prev = fixtures::random_frame(w, h, rng());
    const Frame fill = fixtures::random_frame(w, h, rng());
    FlowField flow = fixtures::random_flow(w, h, 4.0f, rng());
    if (trial % 4 == 0) {
      for (auto& c : flow.data()) c = std::round(c * 2.0f) / 2.0f;
    }
    const auto got = forward_warp(prev, flow, fill);
    const auto want = oracle::splat_warp(prev, flow, fill);
    if (!(got.frame == want.frame) || !(got.stats == want.stats)) ++mismatches;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {mismatches == 0 && secs < 60.0,
          std::to_string(mismatches) + " of 1000 instances differ, " + fmt("%.2f s", secs)};
}

Outcome warp_rules() {
  Frame prev(3, 3);
  Frame fill(3, 3);
  for (std::size_t i = 0; i < 9; ++i) {
    for (int c = 0; c < 3; ++c) {
      prev.pixel(i)[c] = static_cast<std::uint8_t>(10 + i);
      fill.pixel(i)[c] = static_cast<std::uint8_t>(100 + i);
    }
  }
  FlowField flow(3, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) flow.u(x, y) = 1.0f;
  }
  const auto r = forward_warp(prev, flow, fill);
  bool ok = true;
  for (int y = 0; y < 3; ++y) {
    for (int c = 0; c < 3; ++c) {
      ok = ok && r.frame.at(0, y, c) == fill.at(0, y, c);
      ok = ok && r.frame.at(1, y, c) == prev.at(0, y, c);
      ok = ok && r.frame.at(2, y, c) == prev.at(1, y, c);
    }
  }
  const bool stats_ok = r.stats == WarpStats{6, 0, 3, 3};
  std::ostringstream d;
  d << "pixels " << (ok ? "match" : "differ") << "; stats moved=" << r.stats.moved
    << " collisions=" << r.stats.collisions << " deoccluded=" << r.stats.deoccluded
    << " out_of_bounds=" << r.stats.out_of_bounds;
  return {ok && stats_ok, d.str()};
}

// Appearance-freeness over several flow sources. Each AFD clip is 64 frames
// at 224x224 and must reach the clip threshold; natural frames must not.
Outcome appearance_free() {
  constexpr int kSide = 224;
  constexpr int kFrames = 64;
  const auto start = std::chrono::steady_clock::now();

  const auto field = [](const std::function<std::pair<double, double>(int, int)>& f) {
    FlowField flow(kSide, kSide);
    for (int y = 0; y < kSide; ++y) {
      for (int x = 0; x < kSide; ++x) {
        const auto [u, v] = f(x, y);
        flow.u(x, y) = static_cast<float>(u);
        flow.v(x, y) = static_cast<float>(v);
      }
    }
    return flow;
  };

  std::vector<std::pair<std::string, std::vector<FlowField>>> sources;
  sources.emplace_back("zero", std::vector<FlowField>(kFrames - 1, FlowField(kSide, kSide)));
  {
    std::vector<FlowField> pan, blob, spin;
    for (int t = 1; t < kFrames; ++t) {
      const double s = std::sin(2 * kPi * t / 16.0);
      pan.push_back(field([&](int, int) { return std::pair{2.0 * s, 0.5 * s}; }));
      blob.push_back(field([&](int x, int y) {
        const double dx = x - 112.0, dy = y - 112.0;
        const double g = std::exp(-(dx * dx + dy * dy) / (2 * 30.0 * 30.0));
        return std::pair{3.0 * s * g, 1.5 * s * g};
      }));
      spin.push_back(field([&](int x, int y) {
        const double omega = 0.01;
        return std::pair{-omega * (y - 111.5), omega * (x - 111.5)};
      }));
    }
    sources.emplace_back("synthetic-pan", std::move(pan));
    sources.emplace_back("synthetic-blob", std::move(blob));
    sources.emplace_back("synthetic-rotation", std::move(spin));
  }
  const std::vector<Frame> natural = fixtures::real_sequence(kFrames);
  {
    std::vector<FlowField> estimated;
    for (int t = 1; t < kFrames; ++t) estimated.push_back(estimate_flow(natural[t - 1], natural[t]));
    sources.emplace_back("estimated-real", std::move(estimated));
  }

  bool all = true;
  std::ostringstream d;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& [name, flows] = sources[i];
    const auto frames = generate_afd_clip(flows, {kSide, kSide, 42 + i});
    const AuditReport report = audit_clip(frames);
    all = all && report.verdict;
    d << name << "=" << fmt("%.3f", report.fraction_passing) << (report.verdict ? "" : "(fail)")
      << " ";
  }
  const AuditReport control = audit_clip(natural);
  d << "natural-control=" << fmt("%.3f", control.fraction_passing)
    << (control.verdict ? "(unexpected pass)" : "(fails as required)");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  d << ", " << fmt("%.1f s", secs);
  return {all && !control.verdict && secs < 300.0, d.str()};
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "afd_acceptance_determinism";
  fs::remove_all(root);
  std::vector<ClipJob> jobs;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "clip" + std::to_string(i);
    const fs::path dir = root / "in" / id;
    fs::create_directories(dir);
    for (int t = 0; t < 4; ++t) {
      char name[32];
      std::snprintf(name, sizeof name, "%06d.png", t);
      write_image(dir / name, fixtures::blob_texture(48, 40, 0.7 * t, 0.3 * t, 100 + i));
    }
    jobs.push_back({id, dir, FlowSource::estimate(), derive_clip_seed(2026, id), root / "w1" / id});
  }
  BatchOptions one;
  one.workers = 1;
  one.manifest_path = root / "w1/manifest.jsonl";
  const auto a = run_batch(jobs, one);
  for (auto& j : jobs) j.output_dir = root / "w8" / j.clip_id;
  BatchOptions eight;
  eight.workers = 8;
  eight.manifest_path = root / "w8/manifest.jsonl";
  const auto b = run_batch(jobs, eight);

  int same = 0, ok = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ok += a[i].ok() && b[i].ok();
    same += a[i].ok() && a[i].digest == b[i].digest &&
            digest_clip_output(root / "w8" / jobs[i].clip_id) == a[i].digest;
  }
  fs::remove_all(root);
  return {same == 10 && ok == 10,
          std::to_string(same) + " of 10 clip digests identical (workers 1 vs 8), " +
              std::to_string(ok) + " of 10 jobs ok"};
}

Outcome flo_roundtrip() {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> side(1, 80);
  std::uniform_int_distribution<std::uint32_t> bits;
  int exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    FlowField flow = fixtures::random_flow(side(rng), side(rng), 50.0f, rng());
    // Any finite bit pattern within the known range must survive.
    for (auto& c : flow.data()) {
      if (bits(rng) % 8 == 0) {
        float f;
        do {
          f = std::bit_cast<float>(bits(rng));
        } while (is_unknown_flow(f));
        c = f;
      }
    }
    flow.data()[0] = -0.0f;
    const FlowField back = read_flo(write_flo(flow));
    exact += back.bit_equal(flow) && back.width() == flow.width();
  }

  const auto header = [](float magic, std::int32_t w, std::int32_t h) {
    std::vector<std::byte> out(12);
    const auto m = std::bit_cast<std::uint32_t>(magic);
    for (int i = 0; i < 4; ++i) {
      out[i] = std::byte(m >> (8 * i));
      out[4 + i] = std::byte(static_cast<std::uint32_t>(w) >> (8 * i));
      out[8 + i] = std::byte(static_cast<std::uint32_t>(h) >> (8 * i));
    }
    return out;
  };
  auto good = write_flo(fixtures::random_flow(3, 2, 1.0f, 5));
  auto truncated_payload = good;
  truncated_payload.resize(good.size() - 3);
  auto trailing = good;
  trailing.push_back(std::byte{0});
  struct Case {
    const char* name;
    std::vector<std::byte> bytes;
    ErrorCode want;
  };
  const std::vector<Case> corpus{
      {"bad-magic", header(1.0f, 1, 1), ErrorCode::BadMagic},
      {"magic-as-text", {std::byte{'P'}, std::byte{'E'}, std::byte{'I'}, std::byte{'H'}},
       ErrorCode::BadMagic},
      {"empty", {}, ErrorCode::TruncatedPayload},
      {"short-magic", {std::byte{0}, std::byte{0}}, ErrorCode::TruncatedPayload},
      {"short-header", std::vector<std::byte>(good.begin(), good.begin() + 8),
       ErrorCode::TruncatedPayload},
      {"short-payload", truncated_payload, ErrorCode::TruncatedPayload},
      {"negative-width", header(kFloMagic, -3, 2), ErrorCode::NonPositiveDims},
      {"negative-height", header(kFloMagic, 3, -2), ErrorCode::NonPositiveDims},
      {"zero-width", header(kFloMagic, 0, 2), ErrorCode::NonPositiveDims},
      {"oversize", header(kFloMagic, 100000, 1), ErrorCode::OversizeDims},
      {"trailing-bytes", trailing, ErrorCode::TrailingBytes},
  };
  int designated = 0;
  std::string wrong;
  for (const auto& c : corpus) {
    try {
      read_flo(c.bytes);
      wrong += std::string(" ") + c.name + "(accepted)";
    } catch (const Error& e) {
      if (e.code() == c.want) {
        ++designated;
      } else {
        wrong += std::string(" ") + c.name + "(" + std::string(to_string(e.code())) + ")";
      }
    }
  }
  return {exact == 100 && designated == static_cast<int>(corpus.size()),
          std::to_string(exact) + " of 100 fields bit-exact; " + std::to_string(designated) +
              " of " + std::to_string(corpus.size()) + " malformed inputs give their error" + wrong};
}

Outcome flow_estimator() {
  double worst = 0.0;
  for (std::uint32_t seed : {11u, 12u, 13u, 14u, 15u}) {
    const Frame a = fixtures::blob_texture(64, 64, 0, 0, seed);
    const Frame b = fixtures::blob_texture(64, 64, 1, 0, seed);
    const FlowField flow = estimate_flow(a, b);
    double sum = 0;
    int n = 0;
    for (int y = 4; y < 60; ++y) {
      for (int x = 4; x < 60; ++x) {
        sum += std::hypot(flow.u(x, y) - 1.0, flow.v(x, y));
        ++n;
      }
    }
    worst = std::max(worst, sum / n);
  }
  const Frame still = fixtures::blob_texture(64, 64, 0, 0, 3);
  const float zero_mag = estimate_flow(still, still).max_magnitude();
  return {worst <= 0.25 && zero_mag <= 1e-6f,
          "worst interior EPE " + fmt("%.4f px", worst) + " over 5 textures; identical frames max |w| " +
              fmt("%.2e", zero_mag)};
}

Outcome subset_optimality() {
  int exact = 0;
  for (std::uint32_t seed = 0; seed < 100; ++seed) {
    const auto m = fixtures::random_confusion(12, 5000 + seed);
    const SubsetResult r = select_subset(m, 5);
    exact += r.mode == SearchMode::Exhaustive && r.score == oracle::brute_force_best_entropy(m, 5, 0.5);
  }
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows(10, std::vector<double>(10, 0.0));
  for (std::size_t i = 0; i < 10; ++i) {
    labels.push_back("class" + std::to_string(i));
    for (std::size_t j = 0; j < 10; ++j) {
      rows[i][j] = i == j ? 0.6 : (i / 5 == j / 5 ? 0.1 : 0.0);
    }
  }
  const ConfusionMatrix blocks(labels, rows);
  const SubsetResult r = select_subset(blocks, 5);
  const bool one_block = std::all_of(r.selected.begin(), r.selected.end(),
                                     [&](std::size_t i) { return i / 5 == r.selected[0] / 5; });
  return {exact == 100 && one_block,
          std::to_string(exact) + " of 100 exhaustive scores equal the brute-force optimum; "
              "block-diagonal selection " + (one_block ? "within one block" : "crosses blocks")};
}

Outcome flow_colorization() {
  const ColorImage white = flow_to_color(FlowField(4, 4));
  const bool zero_white =
      std::all_of(white.bytes().begin(), white.bytes().end(), [](std::uint8_t b) { return b == 255; });

  constexpr int kAngles = 720;
  constexpr int kRadii = 16;
  const float max_mag = 5.0f;
  FlowField grid(kAngles, kRadii);
  for (int r = 0; r < kRadii; ++r) {
    for (int a = 0; a < kAngles; ++a) {
      const double rad = max_mag * 1.2 * r / (kRadii - 1);
      const double theta = 2 * kPi * a / kAngles;
      grid.u(a, r) = static_cast<float>(rad * std::cos(theta));
      grid.v(a, r) = static_cast<float>(rad * std::sin(theta));
    }
  }
  const ColorImage img = flow_to_color(grid, max_mag);
  int worst = 0;
  for (int r = 0; r < kRadii; ++r) {
    for (int a = 0; a < kAngles; ++a) {
      const auto ref = oracle::reference_color(grid.u(a, r) / max_mag, grid.v(a, r) / max_mag);
      for (int c = 0; c < 3; ++c) {
        worst = std::max(worst, std::abs(int(img.at(a, r, c)) - int(std::floor(ref[c]))));
      }
    }
  }

  // Hue invariance: along each angle, the chroma split (255 - c) / sum is
  // the same at every in-range magnitude, and uniformly rescaling flow and
  // normalization leaves every pixel within one level.
  double worst_hue = 0.0;
  for (int a = 0; a < kAngles; ++a) {
    std::array<double, 3> ref_split{};
    bool have = false;
    for (int r = 0; r < kRadii; ++r) {
      if (max_mag * 1.2 * r / (kRadii - 1) > max_mag || r < kRadii / 2) continue;
      std::array<double, 3> d{};
      double sum = 0;
      for (int c = 0; c < 3; ++c) sum += d[c] = 255.0 - img.at(a, r, c);
      if (sum <= 0) continue;
      for (auto& x : d) x /= sum;
      if (!have) {
        ref_split = d;
        have = true;
        continue;
      }
      for (int c = 0; c < 3; ++c) worst_hue = std::max(worst_hue, std::abs(d[c] - ref_split[c]));
    }
  }
  int worst_scaled = 0;
  for (float s : {0.001f, 0.5f, 7.0f, 1e4f}) {
    FlowField scaled = grid;
    for (auto& c : scaled.data()) c *= s;
    const ColorImage other = flow_to_color(scaled, max_mag * s);
    for (std::size_t i = 0; i < other.bytes().size(); ++i) {
      worst_scaled = std::max(worst_scaled, std::abs(int(other.bytes()[i]) - int(img.bytes()[i])));
    }
  }
  std::ostringstream d;
  d << "zero flow " << (zero_white ? "white" : "not white") << "; max deviation from reference "
    << worst << "/255 on " << kAngles * kRadii << " vectors; chroma split drift "
    << fmt("%.4f", worst_hue) << "; rescaled max deviation " << worst_scaled << "/255";
  return {zero_white && worst <= 1 && worst_hue <= 0.02 && worst_scaled <= 1, d.str()};
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {"warp_oracle", warp_oracle},
    {"warp_rules", warp_rules},
    {"appearance_free", appearance_free},
    {"determinism", determinism},
    {"flo_roundtrip", flo_roundtrip},
    {"flow_estimator", flow_estimator},
    {"subset_optimality", subset_optimality},
    {"flow_colorization", flow_colorization},
};

}  // namespace
}  // namespace afd

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  int ran = 0;
  for (const auto& c : afd::kCriteria) {
    if (!only.empty() && only != c.name) continue;
    ++ran;
    afd::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
