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

#include "afd/audit.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <string>

#include "afd/error.hpp"
#include "json.hpp"

namespace afd {

void AuditThresholds::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "alpha must lie in (0, 1)");
  }
  if (!(max_abs_corr > 0.0 && max_abs_corr <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "correlation bound must lie in (0, 1]");
  }
  if (!(clip_threshold >= 0.0 && clip_threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "clip threshold must lie in [0, 1]");
  }
}

double chi_square_critical(double alpha, int dof) {
  const boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double adjacent_correlation(const Frame& frame, int channel, int dx, int dy) {
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  std::int64_t n = 0;
  for (int y = 0; y + dy < frame.height(); ++y) {
    for (int x = 0; x + dx < frame.width(); ++x) {
      const double a = frame.at(x, y, channel);
      const double b = frame.at(x + dx, y + dy, channel);
      sa += a;
      sb += b;
      saa += a * a;
      sbb += b * b;
      sab += a * b;
      ++n;
    }
  }
  const double nn = static_cast<double>(n);
  const double cov = sab - sa * sb / nn;
  const double va = saa - sa * sa / nn;
  const double vb = sbb - sb * sb / nn;
  if (va <= 0.0 || vb <= 0.0) return 1.0;
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

namespace {

FrameAudit audit_frame_with_critical(const Frame& frame, const AuditThresholds& thresholds,
                                     double critical) {
  if (frame.width() < kAuditMinSide || frame.height() < kAuditMinSide) {
    throw Error(ErrorCode::FrameTooSmall, std::to_string(frame.width()) + "x" +
                                              std::to_string(frame.height()) +
                                              " is below the 32x32 minimum");
  }
  FrameAudit audit;
  const auto bytes = frame.bytes();
  const double expected = static_cast<double>(frame.pixel_count()) / kHistogramBins;
  for (int c = 0; c < Frame::kChannels; ++c) {
    std::array<std::int64_t, kHistogramBins> counts{};
    for (std::size_t i = static_cast<std::size_t>(c); i < bytes.size(); i += Frame::kChannels) {
      ++counts[bytes[i]];
    }
    double chi = 0.0;
    for (auto count : counts) {
      const double d = static_cast<double>(count) - expected;
      chi += d * d / expected;
    }
    audit.chi_square[static_cast<std::size_t>(c)] = chi;
  }
  double h = 0.0, v = 0.0;
  for (int c = 0; c < Frame::kChannels; ++c) {
    h += adjacent_correlation(frame, c, 1, 0);
    v += adjacent_correlation(frame, c, 0, 1);
  }
  audit.corr_horizontal = h / Frame::kChannels;
  audit.corr_vertical = v / Frame::kChannels;

  audit.passed = std::abs(audit.corr_horizontal) < thresholds.max_abs_corr &&
                 std::abs(audit.corr_vertical) < thresholds.max_abs_corr;
  for (double chi : audit.chi_square) audit.passed = audit.passed && chi < critical;
  return audit;
}

}  // namespace

FrameAudit audit_frame(const Frame& frame, const AuditThresholds& thresholds) {
  thresholds.validate();
  return audit_frame_with_critical(frame, thresholds, chi_square_critical(thresholds.alpha));
}

AuditReport summarize_audit(std::vector<FrameAudit> frames, const AuditThresholds& thresholds) {
  thresholds.validate();
  if (frames.empty()) throw Error(ErrorCode::EmptyClip, "no frames to audit");
  AuditReport report;
  report.thresholds = thresholds;
  report.chi_square_critical = chi_square_critical(thresholds.alpha);
  std::size_t passing = 0;
  for (const auto& f : frames) passing += f.passed ? 1 : 0;
  report.fraction_passing = static_cast<double>(passing) / static_cast<double>(frames.size());
  report.verdict = report.fraction_passing >= thresholds.clip_threshold;
  report.frames = std::move(frames);
  return report;
}

AuditReport audit_clip(std::span<const Frame> frames, const AuditThresholds& thresholds,
                       std::span<const double> fill_fractions) {
  thresholds.validate();
  if (frames.empty()) throw Error(ErrorCode::EmptyClip, "no frames to audit");
  if (!fill_fractions.empty() && fill_fractions.size() != frames.size()) {
    throw Error(ErrorCode::DimensionMismatch, "fill fractions do not match frame count");
  }
  const double critical = chi_square_critical(thresholds.alpha);
  std::vector<FrameAudit> audits;
  audits.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    audits.push_back(audit_frame_with_critical(frames[i], thresholds, critical));
    if (!fill_fractions.empty()) audits.back().fill_fraction = fill_fractions[i];
  }
  return summarize_audit(std::move(audits), thresholds);
}

void write_audit_report(std::ostream& out, const AuditReport& report) {
  for (std::size_t i = 0; i < report.frames.size(); ++i) {
    const auto& f = report.frames[i];
    nlohmann::ordered_json rec;
    rec["type"] = "frame";
    rec["index"] = i;
    rec["chi_square"] = f.chi_square;
    rec["corr_horizontal"] = f.corr_horizontal;
    rec["corr_vertical"] = f.corr_vertical;
    if (f.fill_fraction) {
      rec["fill_fraction"] = *f.fill_fraction;
    } else {
      rec["fill_fraction"] = nullptr;
    }
    rec["passed"] = f.passed;
    out << rec.dump() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["type"] = "summary";
  summary["frames"] = report.frames.size();
  summary["alpha"] = report.thresholds.alpha;
  summary["chi_square_critical"] = report.chi_square_critical;
  summary["max_abs_corr"] = report.thresholds.max_abs_corr;
  summary["clip_threshold"] = report.thresholds.clip_threshold;
  summary["fraction_frames_passing"] = report.fraction_passing;
  summary["verdict"] = report.verdict ? "pass" : "fail";
  out << summary.dump() << '\n';
}

}  // namespace afd
