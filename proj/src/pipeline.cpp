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

#include "afd/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "afd/digest.hpp"
#include "afd/error.hpp"
#include "afd/flow_io.hpp"
#include "afd/image_io.hpp"
#include "afd/noise.hpp"
#include "json.hpp"

namespace afd {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string frame_name(std::size_t index, std::string_view ext) {
  std::ostringstream name;
  name.width(6);
  name.fill('0');
  name << index;
  return name.str() + "." + std::string(ext);
}

ordered_json params_to_json(const JobParams& p) {
  ordered_json j;
  j["flow"] = {{"alpha", p.flow_params.alpha},
               {"iterations", p.flow_params.iterations},
               {"pyramid_levels", p.flow_params.pyramid_levels},
               {"pyramid_scale", p.flow_params.pyramid_scale}};
  j["audit"] = {{"alpha", p.audit.alpha},
                {"max_abs_corr", p.audit.max_abs_corr},
                {"clip_threshold", p.audit.clip_threshold}};
  j["frame_format"] = p.frame_format;
  j["flow_viz"] = p.flow_viz;
  if (p.viz_max_magnitude) {
    j["viz_max_magnitude"] = *p.viz_max_magnitude;
  } else {
    j["viz_max_magnitude"] = nullptr;
  }
  j["save_flows"] = p.save_flows;
  return j;
}

JobParams params_from_json(const nlohmann::json& j) {
  JobParams p;
  const auto& flow = j.at("flow");
  p.flow_params.alpha = flow.at("alpha").get<double>();
  p.flow_params.iterations = flow.at("iterations").get<int>();
  p.flow_params.pyramid_levels = flow.at("pyramid_levels").get<int>();
  p.flow_params.pyramid_scale = flow.at("pyramid_scale").get<double>();
  const auto& audit = j.at("audit");
  p.audit.alpha = audit.at("alpha").get<double>();
  p.audit.max_abs_corr = audit.at("max_abs_corr").get<double>();
  p.audit.clip_threshold = audit.at("clip_threshold").get<double>();
  p.frame_format = j.at("frame_format").get<std::string>();
  p.flow_viz = j.at("flow_viz").get<bool>();
  if (!j.at("viz_max_magnitude").is_null()) {
    p.viz_max_magnitude = j.at("viz_max_magnitude").get<float>();
  }
  p.save_flows = j.at("save_flows").get<bool>();
  return p;
}

void reset_dir(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
}

void run_job_unchecked(const ClipJob& job, const JobParams& params, ManifestRecord& record) {
  params.flow_params.validate();
  params.audit.validate();
  if (params.frame_format != "png" && params.frame_format != "ppm") {
    throw Error(ErrorCode::InvalidParams, "frame format must be png or ppm");
  }

  const auto frame_paths = list_frames(job.frame_dir);
  if (frame_paths.empty()) {
    throw Error(ErrorCode::InvalidJob, "no frames in " + job.frame_dir.string());
  }
  std::vector<fs::path> flow_paths;
  if (job.flow.kind == FlowSource::Kind::Files) {
    flow_paths = list_flows(job.flow.dir);
    if (flow_paths.size() + 1 != frame_paths.size()) {
      throw Error(ErrorCode::InvalidJob, std::to_string(flow_paths.size()) + " flow files for " +
                                             std::to_string(frame_paths.size()) + " frames");
    }
  }

  Frame input = read_image(frame_paths.front());
  record.width = input.width();
  record.height = input.height();

  fs::create_directories(job.output_dir);
  const fs::path frames_dir = job.output_dir / "frames";
  reset_dir(frames_dir);
  const fs::path viz_dir = job.output_dir / "flow_viz";
  const fs::path flow_dir = job.output_dir / "flow";
  if (params.flow_viz) reset_dir(viz_dir);
  if (params.save_flows) reset_dir(flow_dir);

  const bool auditable = input.width() >= kAuditMinSide && input.height() >= kAuditMinSide;
  std::vector<FrameAudit> audits;

  Sha256 hash;
  ClipWarper warper(NoiseSpec{input.width(), input.height(), job.seed});
  const double total = static_cast<double>(input.width()) * static_cast<double>(input.height());
  const auto emit = [&](std::size_t index, std::optional<double> fill) {
    const Frame& out = warper.current();
    write_image(frames_dir / frame_name(index, params.frame_format), out);
    digest_frame(hash, out);
    if (auditable) {
      audits.push_back(audit_frame(out, params.audit));
      audits.back().fill_fraction = fill;
    }
  };
  emit(0, std::nullopt);

  for (std::size_t t = 1; t < frame_paths.size(); ++t) {
    Frame next = read_image(frame_paths[t]);
    if (!next.same_shape(input)) {
      throw Error(ErrorCode::DimensionMismatch, frame_paths[t].string() + " differs in size from " +
                                                    frame_paths.front().string());
    }
    FlowField flow;
    if (job.flow.kind == FlowSource::Kind::Files) {
      flow = read_flo_file(flow_paths[t - 1]);
    } else {
      flow = estimate_flow(input, next, params.flow_params);
    }
    const WarpStats& stats = warper.advance(flow);
    record.warp += stats;
    if (params.flow_viz) {
      write_image(viz_dir / frame_name(t - 1, params.frame_format),
                  flow_to_color(flow, params.viz_max_magnitude));
    }
    if (params.save_flows) write_flo_file(flow_dir / frame_name(t - 1, "flo"), flow);
    emit(t, static_cast<double>(stats.deoccluded) / total);
    input = std::move(next);
  }

  record.frame_count = static_cast<int>(frame_paths.size());
  record.digest = "sha256:" + to_hex(hash.finish());

  if (auditable) {
    const AuditReport report = summarize_audit(std::move(audits), params.audit);
    std::ofstream out(job.output_dir / "audit.jsonl", std::ios::trunc);
    write_audit_report(out, report);
    if (!out) throw Error(ErrorCode::IoError, "cannot write audit report");
    record.audit_verdict = report.verdict ? "pass" : "fail";
    record.audit_fraction_passing = report.fraction_passing;
  } else {
    std::error_code ec;
    fs::remove(job.output_dir / "audit.jsonl", ec);
    record.audit_verdict = "skipped";
  }
  record.status = "ok";
}

bool record_matches(const ManifestRecord& record, const ClipJob& job, const JobParams& params) {
  return record.ok() && record.clip_id == job.clip_id && record.seed == job.seed &&
         record.flow_source == job.flow.describe() && record.params == params &&
         record.tool_version == kToolVersion;
}

}  // namespace

bool operator==(const JobParams& a, const JobParams& b) {
  return a.flow_params.alpha == b.flow_params.alpha &&
         a.flow_params.iterations == b.flow_params.iterations &&
         a.flow_params.pyramid_levels == b.flow_params.pyramid_levels &&
         a.flow_params.pyramid_scale == b.flow_params.pyramid_scale &&
         a.audit.alpha == b.audit.alpha && a.audit.max_abs_corr == b.audit.max_abs_corr &&
         a.audit.clip_threshold == b.audit.clip_threshold && a.frame_format == b.frame_format &&
         a.flow_viz == b.flow_viz && a.viz_max_magnitude == b.viz_max_magnitude &&
         a.save_flows == b.save_flows;
}

std::string FlowSource::describe() const {
  return kind == Kind::Estimate ? std::string("estimate") : "files:" + dir.generic_string();
}

std::string to_manifest_line(const ManifestRecord& r) {
  ordered_json j;
  j["clip_id"] = r.clip_id;
  j["status"] = r.status;
  j["error"] = r.error;
  j["seed"] = r.seed;
  j["flow_source"] = r.flow_source;
  j["frame_count"] = r.frame_count;
  j["width"] = r.width;
  j["height"] = r.height;
  j["digest"] = r.digest;
  j["warp"] = {{"moved", r.warp.moved},
               {"collisions", r.warp.collisions},
               {"deoccluded", r.warp.deoccluded},
               {"out_of_bounds", r.warp.out_of_bounds}};
  j["audit"] = {{"verdict", r.audit_verdict},
                {"fraction_frames_passing", r.audit_fraction_passing}};
  j["tool_version"] = r.tool_version;
  j["params"] = params_to_json(r.params);
  return j.dump();
}

ManifestRecord parse_manifest_line(std::string_view line) {
  try {
    const auto j = nlohmann::json::parse(line);
    ManifestRecord r;
    r.clip_id = j.at("clip_id").get<std::string>();
    r.status = j.at("status").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.flow_source = j.at("flow_source").get<std::string>();
    r.frame_count = j.at("frame_count").get<int>();
    r.width = j.at("width").get<int>();
    r.height = j.at("height").get<int>();
    r.digest = j.at("digest").get<std::string>();
    const auto& w = j.at("warp");
    r.warp.moved = w.at("moved").get<std::int64_t>();
    r.warp.collisions = w.at("collisions").get<std::int64_t>();
    r.warp.deoccluded = w.at("deoccluded").get<std::int64_t>();
    r.warp.out_of_bounds = w.at("out_of_bounds").get<std::int64_t>();
    r.audit_verdict = j.at("audit").at("verdict").get<std::string>();
    r.audit_fraction_passing = j.at("audit").at("fraction_frames_passing").get<double>();
    r.tool_version = j.at("tool_version").get<std::string>();
    r.params = params_from_json(j.at("params"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidJob, std::string("malformed manifest line: ") + e.what());
  }
}

std::vector<ManifestRecord> read_manifest(const fs::path& path) {
  std::vector<ManifestRecord> records;
  std::ifstream in(path);
  if (!in) return records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      records.push_back(parse_manifest_line(line));
    } catch (const Error&) {
      // A torn last line from an interrupted run is tolerated.
    }
  }
  return records;
}

std::uint64_t derive_clip_seed(std::uint64_t batch_seed, std::string_view clip_id) {
  Sha256 hash;
  hash.update_u64(batch_seed).update(clip_id);
  const auto d = hash.finish();
  std::uint64_t seed = 0;
  for (int i = 7; i >= 0; --i) seed = (seed << 8) | d[static_cast<std::size_t>(i)];
  return seed;
}

namespace {

std::vector<fs::path> sorted_files(const fs::path& dir, bool (*accept)(const fs::path&)) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::IoError, "not a directory: " + dir.string());
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && accept(entry.path())) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

}  // namespace

std::vector<fs::path> list_frames(const fs::path& dir) { return sorted_files(dir, is_image_path); }

std::vector<fs::path> list_flows(const fs::path& dir) {
  return sorted_files(dir, [](const fs::path& p) { return p.extension() == ".flo"; });
}

std::string digest_clip_output(const fs::path& output_dir) {
  Sha256 hash;
  for (const auto& path : list_frames(output_dir / "frames")) digest_frame(hash, read_image(path));
  return "sha256:" + to_hex(hash.finish());
}

ManifestRecord run_job(const ClipJob& job, const JobParams& params) {
  ManifestRecord record;
  record.clip_id = job.clip_id;
  record.seed = job.seed;
  record.flow_source = job.flow.describe();
  record.params = params;
  try {
    run_job_unchecked(job, params, record);
  } catch (const std::exception& e) {
    record.status = "error";
    record.error = e.what();
    record.digest.clear();
    record.warp = {};
    record.audit_verdict.clear();
    record.audit_fraction_passing = 0.0;
  }
  return record;
}

std::vector<ManifestRecord> run_batch(const std::vector<ClipJob>& jobs, const BatchOptions& options) {
  std::set<std::string> ids;
  std::set<std::string> outputs;
  for (const auto& job : jobs) {
    if (!ids.insert(job.clip_id).second) {
      throw Error(ErrorCode::DuplicateClipId, "clip id '" + job.clip_id + "' appears twice");
    }
    if (!outputs.insert(fs::absolute(job.output_dir).lexically_normal().string()).second) {
      throw Error(ErrorCode::InvalidJob, "output directory shared by two clips: " +
                                             job.output_dir.string());
    }
  }
  if (options.workers < 1) throw Error(ErrorCode::InvalidParams, "workers must be >= 1");

  std::map<std::string, ManifestRecord> previous;
  for (auto& record : read_manifest(options.manifest_path)) {
    previous.insert_or_assign(record.clip_id, std::move(record));
  }

  std::vector<ManifestRecord> results(jobs.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto it = previous.find(jobs[i].clip_id);
    if (it != previous.end() && record_matches(it->second, jobs[i], options.params)) {
      std::string digest;
      try {
        digest = digest_clip_output(jobs[i].output_dir);
      } catch (const std::exception&) {
      }
      if (digest == it->second.digest) {
        results[i] = it->second;
        continue;
      }
    }
    pending.push_back(i);
  }

  if (!options.manifest_path.parent_path().empty()) {
    fs::create_directories(options.manifest_path.parent_path());
  }
  std::ofstream manifest(options.manifest_path, std::ios::app);
  if (!manifest) {
    throw Error(ErrorCode::IoError, "cannot open manifest " + options.manifest_path.string());
  }
  std::mutex manifest_mutex;
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t n = next++; n < pending.size(); n = next++) {
      const std::size_t i = pending[n];
      results[i] = run_job(jobs[i], options.params);
      const std::lock_guard lock(manifest_mutex);
      manifest << to_manifest_line(results[i]) << '\n';
      manifest.flush();
    }
  };
  const std::size_t thread_count =
      std::min(pending.size(), static_cast<std::size_t>(options.workers));
  std::vector<std::jthread> threads;
  threads.reserve(thread_count);
  for (std::size_t t = 0; t < thread_count; ++t) threads.emplace_back(worker);
  threads.clear();  // joins
  return results;
}

std::vector<ClipJob> discover_jobs(const fs::path& input_root, const fs::path& output_root,
                                   const FlowSource& flow, std::uint64_t batch_seed) {
  std::error_code ec;
  if (!fs::is_directory(input_root, ec)) {
    throw Error(ErrorCode::IoError, "input is not a directory: " + input_root.string());
  }
  std::vector<fs::path> dirs{input_root};
  for (const auto& entry : fs::recursive_directory_iterator(input_root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::vector<ClipJob> jobs;
  for (const auto& dir : dirs) {
    if (list_frames(dir).empty()) continue;
    ClipJob job;
    job.clip_id = fs::relative(dir, input_root).generic_string();
    if (job.clip_id.empty()) job.clip_id = ".";
    job.frame_dir = dir;
    job.flow = flow;
    if (flow.kind == FlowSource::Kind::Files) {
      job.flow.dir = job.clip_id == "." ? flow.dir : flow.dir / job.clip_id;
    }
    job.seed = derive_clip_seed(batch_seed, job.clip_id);
    job.output_dir = job.clip_id == "." ? output_root : output_root / job.clip_id;
    jobs.push_back(std::move(job));
  }
  std::sort(jobs.begin(), jobs.end(),
            [](const ClipJob& a, const ClipJob& b) { return a.clip_id < b.clip_id; });
  return jobs;
}

std::size_t estimate_flow_dir(const fs::path& frame_dir, const fs::path& output_dir,
                              const HornSchunckParams& params) {
  params.validate();
  const auto frames = list_frames(frame_dir);
  fs::create_directories(output_dir);
  if (frames.size() < 2) return 0;
  Frame prev = read_image(frames.front());
  for (std::size_t t = 1; t < frames.size(); ++t) {
    Frame next = read_image(frames[t]);
    write_flo_file(output_dir / frame_name(t - 1, "flo"), estimate_flow(prev, next, params));
    prev = std::move(next);
  }
  return frames.size() - 1;
}

}  // namespace afd
