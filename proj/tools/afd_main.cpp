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

// afd: generate appearance-free videos from frame sequences.
//
//   afd gen    --input DIR --output DIR [--flow DIR|estimate] [--seed N] [--workers N] ...
//   afd flow   --input DIR --output DIR [--alpha A] [--iterations N] [--pyramid-levels L]
//   afd viz    --input FILE|DIR --output DIR [--max-magnitude M]
//   afd audit  --input DIR [--alpha 0.01] [--corr 0.05] [--clip-threshold 0.95] [--report FILE]
//   afd subset --input CSV [--k 5] [--min-accuracy 0.5]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afd/audit.hpp"
#include "afd/error.hpp"
#include "afd/flow_io.hpp"
#include "afd/image_io.hpp"
#include "afd/pipeline.hpp"
#include "afd/subset.hpp"

namespace fs = std::filesystem;

namespace {

void add_flow_options(CLI::App* cmd, afd::HornSchunckParams& params) {
  cmd->add_option("--alpha", params.alpha, "Horn-Schunck smoothness weight (8-bit intensity units)")
      ->capture_default_str();
  cmd->add_option("--iterations", params.iterations, "Jacobi iterations per pyramid level")
      ->capture_default_str();
  cmd->add_option("--pyramid-levels", params.pyramid_levels, "Coarse-to-fine pyramid levels")
      ->capture_default_str();
  cmd->add_option("--pyramid-scale", params.pyramid_scale, "Downsampling factor between levels")
      ->capture_default_str();
}

int run_gen(const fs::path& input, const fs::path& output, const std::string& flow,
            std::uint64_t seed, int workers, const afd::JobParams& params) {
  const auto source = flow == "estimate" ? afd::FlowSource::estimate() : afd::FlowSource::files(flow);
  const auto jobs = afd::discover_jobs(input, output, source, seed);
  afd::BatchOptions options;
  options.workers = workers;
  options.manifest_path = output / "manifest.jsonl";
  options.params = params;
  const auto records = afd::run_batch(jobs, options);
  int failed = 0;
  for (const auto& r : records) {
    if (!r.ok()) {
      ++failed;
      std::cerr << "FAILED " << r.clip_id << ": " << r.error << '\n';
    } else {
      std::cout << r.clip_id << "  frames=" << r.frame_count << "  audit=" << r.audit_verdict
                << "  " << r.digest << '\n';
    }
  }
  std::cout << records.size() << " clips, " << failed << " failed\n";
  return failed == 0 ? 0 : 1;
}

int run_viz(const fs::path& input, const fs::path& output, std::optional<float> max_magnitude) {
  std::vector<fs::path> files;
  if (fs::is_directory(input)) {
    files = afd::list_flows(input);
  } else {
    files.push_back(input);
  }
  fs::create_directories(output);
  for (const auto& file : files) {
    const auto flow = afd::read_flo_file(file);
    auto name = file.filename();
    name.replace_extension(".png");
    afd::write_image(output / name, afd::flow_to_color(flow, max_magnitude));
  }
  std::cout << files.size() << " flow images written to " << output << '\n';
  return 0;
}

int run_audit(const fs::path& input, const afd::AuditThresholds& thresholds,
              const std::string& report_path) {
  std::vector<afd::Frame> frames;
  for (const auto& path : afd::list_frames(input)) frames.push_back(afd::read_image(path));
  const auto report = afd::audit_clip(frames, thresholds);
  if (report_path.empty() || report_path == "-") {
    afd::write_audit_report(std::cout, report);
  } else {
    std::ofstream out(report_path);
    afd::write_audit_report(out, report);
    std::cout << "verdict " << (report.verdict ? "pass" : "fail") << " ("
              << report.fraction_passing << " of frames passing)\n";
  }
  return report.verdict ? 0 : 1;
}

int run_subset(const fs::path& input, std::size_t k, double min_accuracy) {
  std::ifstream in(input);
  if (!in) throw afd::Error(afd::ErrorCode::IoError, "cannot open " + input.string());
  const auto matrix = afd::parse_confusion_csv(in);
  afd::SubsetOptions options;
  options.min_accuracy = min_accuracy;
  afd::write_subset_result(std::cout, matrix, afd::select_subset(matrix, k, options));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Appearance-free video generation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(afd::kToolVersion));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate appearance-free clips for a tree of frame folders");
  fs::path gen_input, gen_output;
  std::string gen_flow = "estimate";
  std::uint64_t gen_seed = 0;
  int gen_workers = 1;
  afd::JobParams gen_params;
  std::optional<float> gen_viz_max;
  gen->add_option("--input", gen_input, "Root of clip frame directories")->required();
  gen->add_option("--output", gen_output, "Output root (manifest.jsonl is written here)")->required();
  gen->add_option("--flow", gen_flow, "Flow root with one .flo directory per clip, or 'estimate'")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Batch seed; per-clip seeds derive from it and the clip id")
      ->capture_default_str();
  gen->add_option("--workers", gen_workers, "Clips processed concurrently")->capture_default_str();
  add_flow_options(gen, gen_params.flow_params);
  gen->add_option("--format", gen_params.frame_format, "Frame image format")
      ->check(CLI::IsMember({"png", "ppm"}))
      ->capture_default_str();
  gen->add_flag("--viz", gen_params.flow_viz, "Also write color-coded flow images");
  gen->add_option("--max-magnitude", gen_viz_max, "Fixed flow visualization scale");
  gen->add_flag("--save-flow", gen_params.save_flows, "Also write the flows used, as .flo");
  gen->add_option("--audit-alpha", gen_params.audit.alpha, "Chi-square significance for the audit")
      ->capture_default_str();
  gen->add_option("--corr", gen_params.audit.max_abs_corr, "Adjacent-pixel correlation bound")
      ->capture_default_str();
  gen->add_option("--clip-threshold", gen_params.audit.clip_threshold,
                  "Fraction of frames that must pass the audit")
      ->capture_default_str();

  // flow
  auto* flow = app.add_subcommand("flow", "Estimate flow between adjacent frames and write .flo files");
  fs::path flow_input, flow_output;
  afd::HornSchunckParams flow_params;
  flow->add_option("--input", flow_input, "Frame directory")->required();
  flow->add_option("--output", flow_output, "Directory for .flo files")->required();
  add_flow_options(flow, flow_params);

  // viz
  auto* viz = app.add_subcommand("viz", "Color-code .flo files (Middlebury wheel)");
  fs::path viz_input, viz_output;
  std::optional<float> viz_max;
  viz->add_option("--input", viz_input, ".flo file or directory")->required();
  viz->add_option("--output", viz_output, "Directory for PNG images")->required();
  viz->add_option("--max-magnitude", viz_max, "Normalization scale (default: per-field maximum)");

  // audit
  auto* audit = app.add_subcommand("audit", "Statistical appearance-freeness audit of a frame directory");
  fs::path audit_input;
  afd::AuditThresholds audit_thresholds;
  std::string audit_report;
  audit->add_option("--input", audit_input, "Frame directory")->required();
  audit->add_option("--alpha", audit_thresholds.alpha, "Chi-square significance level")
      ->capture_default_str();
  audit->add_option("--corr", audit_thresholds.max_abs_corr, "Adjacent-pixel correlation bound")
      ->capture_default_str();
  audit->add_option("--clip-threshold", audit_thresholds.clip_threshold,
                    "Fraction of frames that must pass")
      ->capture_default_str();
  audit->add_option("--report", audit_report, "Report path (default: stdout)");

  // subset
  auto* subset = app.add_subcommand("subset", "Select the most mutually confused class subset");
  fs::path subset_input;
  std::size_t subset_k = 5;
  double subset_min_accuracy = 0.5;
  subset->add_option("--input", subset_input, "Confusion matrix CSV with a header row of labels")
      ->required();
  subset->add_option("--k", subset_k, "Subset size")->capture_default_str();
  subset->add_option("--min-accuracy", subset_min_accuracy, "Minimum diagonal rate")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      gen_params.viz_max_magnitude = gen_viz_max;
      return run_gen(gen_input, gen_output, gen_flow, gen_seed, gen_workers, gen_params);
    }
    if (flow->parsed()) {
      const auto n = afd::estimate_flow_dir(flow_input, flow_output, flow_params);
      std::cout << n << " flow files written to " << flow_output << '\n';
      return 0;
    }
    if (viz->parsed()) return run_viz(viz_input, viz_output, viz_max);
    if (audit->parsed()) return run_audit(audit_input, audit_thresholds, audit_report);
    if (subset->parsed()) return run_subset(subset_input, subset_k, subset_min_accuracy);
  } catch (const std::exception& e) {
    std::cerr << "afd: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
