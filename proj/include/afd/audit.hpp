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

// Single-frame statistical audit of appearance-freeness: a frame of i.i.d.
// uniform noise has flat channel histograms and no correlation between
// neighboring pixels. Generated frames are expected to keep both.

#ifndef AFD_AUDIT_HPP_
#define AFD_AUDIT_HPP_

#include <array>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "afd/image.hpp"

namespace afd {

inline constexpr int kAuditMinSide = 32;
inline constexpr int kHistogramBins = 256;

struct AuditThresholds {
  double alpha = 0.01;          // chi-square significance level
  double max_abs_corr = 0.05;   // bound on |adjacent-pixel correlation|
  double clip_threshold = 0.95; // fraction of frames that must pass

  // Throws InvalidParams for values outside (0,1), (0,1], [0,1].
  void validate() const;
};

// Upper critical value of the chi-square law with `dof` degrees of freedom
// at significance `alpha`.
double chi_square_critical(double alpha, int dof = kHistogramBins - 1);

struct FrameAudit {
  std::array<double, 3> chi_square{};  // per channel, 256 bins vs uniform
  double corr_horizontal = 0.0;        // channel-averaged Pearson r
  double corr_vertical = 0.0;
  std::optional<double> fill_fraction;  // deoccluded / total, when known
  bool passed = false;
};

struct AuditReport {
  AuditThresholds thresholds;
  double chi_square_critical = 0.0;
  std::vector<FrameAudit> frames;
  double fraction_passing = 0.0;
  bool verdict = false;
};

// Pearson correlation of horizontally (dx=1) or vertically (dy=1) adjacent
// values of one channel. A constant channel is perfectly predictable from
// its neighbor and reports 1.
double adjacent_correlation(const Frame& frame, int channel, int dx, int dy);

// Throws FrameTooSmall below 32x32.
FrameAudit audit_frame(const Frame& frame, const AuditThresholds& thresholds = {});

// `fill_fractions`, if non-empty, must have one entry per frame.
// Throws EmptyClip, DimensionMismatch.
AuditReport audit_clip(std::span<const Frame> frames, const AuditThresholds& thresholds = {},
                       std::span<const double> fill_fractions = {});

// Verdict from already-audited frames (used when frames are streamed).
AuditReport summarize_audit(std::vector<FrameAudit> frames, const AuditThresholds& thresholds);

// JSON lines: one {"type":"frame",...} record per frame, then one
// {"type":"summary",...} record.
void write_audit_report(std::ostream& out, const AuditReport& report);

}  // namespace afd

#endif  // AFD_AUDIT_HPP_
