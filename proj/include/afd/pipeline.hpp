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

// Batch generation of appearance-free clips with a line-delimited JSON
// manifest that is sufficient to regenerate every output bit-exactly.
//
// Output layout of one clip:
//   <output_dir>/frames/000000.png ...   R_0 .. R_{T-1}
//   <output_dir>/audit.jsonl             per-frame audit + summary
//   <output_dir>/flow_viz/000000.png ... Middlebury coloring (optional)
//   <output_dir>/flow/000000.flo ...     estimated flows (optional)

#ifndef AFD_PIPELINE_HPP_
#define AFD_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afd/audit.hpp"
#include "afd/flow_estimate.hpp"
#include "afd/warp.hpp"

namespace afd {

inline constexpr std::string_view kToolVersion = "afd 0.1.0";

struct FlowSource {
  enum class Kind { Files, Estimate };
  Kind kind = Kind::Estimate;
  std::filesystem::path dir;  // for Files: directory of .flo, sorted by name

  static FlowSource estimate() { return {Kind::Estimate, {}}; }
  static FlowSource files(std::filesystem::path dir) { return {Kind::Files, std::move(dir)}; }
  std::string describe() const;
};

struct ClipJob {
  std::string clip_id;
  std::filesystem::path frame_dir;  // lossless images, ordered by zero-padded name
  FlowSource flow;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir;
};

// Everything besides the job itself that influences output bytes, plus the
// optional side outputs.
struct JobParams {
  HornSchunckParams flow_params;
  AuditThresholds audit;
  std::string frame_format = "png";  // "png" or "ppm"
  bool flow_viz = false;
  std::optional<float> viz_max_magnitude;
  bool save_flows = false;

  friend bool operator==(const JobParams&, const JobParams&);
};

struct ManifestRecord {
  std::string clip_id;
  std::string status;  // "ok" or "error"
  std::string error;
  std::uint64_t seed = 0;
  std::string flow_source;
  int frame_count = 0;
  int width = 0;
  int height = 0;
  std::string digest;  // "sha256:<hex>" over frame shapes and rasters
  WarpStats warp;      // summed over all steps
  std::string audit_verdict;  // "pass", "fail" or "skipped" (frames below 32x32)
  double audit_fraction_passing = 0.0;
  std::string tool_version{kToolVersion};
  JobParams params;

  bool ok() const noexcept { return status == "ok"; }
};

std::string to_manifest_line(const ManifestRecord& record);
// Throws InvalidJob on malformed lines.
ManifestRecord parse_manifest_line(std::string_view line);
// Missing file yields an empty list; malformed lines are skipped.
std::vector<ManifestRecord> read_manifest(const std::filesystem::path& path);

// First 8 bytes (little-endian) of SHA-256(le64(batch_seed) || clip_id).
std::uint64_t derive_clip_seed(std::uint64_t batch_seed, std::string_view clip_id);

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);
std::vector<std::filesystem::path> list_flows(const std::filesystem::path& dir);

// Digest of the frames already present in <output_dir>/frames.
std::string digest_clip_output(const std::filesystem::path& output_dir);

// Never throws for clip-level problems: failures come back as a record with
// status "error". Rerunning an identical job rewrites identical bytes.
ManifestRecord run_job(const ClipJob& job, const JobParams& params = {});

struct BatchOptions {
  int workers = 1;
  std::filesystem::path manifest_path;
  JobParams params;
};

// Runs jobs on up to `workers` threads. Each finished job is appended to the
// manifest as one line (completion order). Jobs whose previous manifest
// record still matches their inputs and on-disk digest are skipped and their
// old record returned. Results are in job order.
// Throws DuplicateClipId / InvalidJob before running anything.
std::vector<ManifestRecord> run_batch(const std::vector<ClipJob>& jobs, const BatchOptions& options);

// Every directory under `input_root` holding at least one frame image is a
// clip; its id is the path relative to `input_root` ("." for the root).
// For file-based flow, flows live at flow.dir / clip_id.
std::vector<ClipJob> discover_jobs(const std::filesystem::path& input_root,
                                   const std::filesystem::path& output_root,
                                   const FlowSource& flow, std::uint64_t batch_seed);

// Estimates flow for every adjacent frame pair in `frame_dir` and writes
// <output_dir>/000000.flo ... Returns the number of files written.
std::size_t estimate_flow_dir(const std::filesystem::path& frame_dir,
                              const std::filesystem::path& output_dir,
                              const HornSchunckParams& params = {});

}  // namespace afd

#endif  // AFD_PIPELINE_HPP_
