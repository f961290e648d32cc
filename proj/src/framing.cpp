// voxanon/framing.cpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "voxanon/framing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxanon/error.hpp"

namespace voxanon {

Eigen::VectorXd periodic_hann(Eigen::Index n) {
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(n));
  return w;
}

FramePlan FramePlan::sqrt_hann(Eigen::Index frame_len, Eigen::Index hop) {
  FramePlan plan;
  plan.frame_len = frame_len;
  plan.hop = hop;
  plan.analysis_window = periodic_hann(frame_len).cwiseSqrt();
  plan.synthesis_window = plan.analysis_window;
  plan.validate();
  return plan;
}

FramePlan FramePlan::standard(int sample_rate) {
  return sqrt_hann(sample_rate / 50, sample_rate / 100);
}

void FramePlan::validate() const {
  if (frame_len <= 0 || hop <= 0 || hop > frame_len)
    throw Error(ErrorKind::InvalidArgument, "frame plan needs 0 < hop <= frame_len, got hop=" +
                                                std::to_string(hop) + " frame_len=" + std::to_string(frame_len));
  if (analysis_window.size() != frame_len || synthesis_window.size() != frame_len)
    throw Error(ErrorKind::InvalidArgument, "window length differs from frame length");
}

Eigen::Index FramePlan::frame_count(Eigen::Index n) const {
  if (n <= 0) return 0;
  return (n + hop - 1) / hop;
}

double cola_deviation(const FramePlan &plan) {
  plan.validate();
  const Eigen::VectorXd product = plan.analysis_window.cwiseProduct(plan.synthesis_window);
  Eigen::VectorXd period = Eigen::VectorXd::Zero(plan.hop);
  for (Eigen::Index i = 0; i < plan.frame_len; ++i) period[i % plan.hop] += product[i];
  const double mean = period.mean();
  if (mean == 0.0) return 1.0;
  return (period.array() - mean).abs().maxCoeff() / std::abs(mean);
}

Eigen::MatrixXd frame_signal(const Waveform &w, const FramePlan &plan) {
  plan.validate();
  const Eigen::Index n = w.size();
  if (n == 0) throw Error(ErrorKind::EmptySignal, "cannot frame an empty signal");
  const Eigen::Index count = plan.frame_count(n);
  Eigen::MatrixXd frames = Eigen::MatrixXd::Zero(plan.frame_len, count);
  for (Eigen::Index k = 0; k < count; ++k) {
    const Eigen::Index start = k * plan.hop;
    const Eigen::Index len = std::min(plan.frame_len, n - start);
    frames.col(k).head(len) = w.samples.segment(start, len).cwiseProduct(plan.analysis_window.head(len));
  }
  return frames;
}

Waveform overlap_add(const Eigen::MatrixXd &frames, const FramePlan &plan, Eigen::Index out_len) {
  plan.validate();
  if (frames.rows() != plan.frame_len)
    throw Error(ErrorKind::PlanMismatch, "frames have " + std::to_string(frames.rows()) +
                                             " rows, plan frame length is " + std::to_string(plan.frame_len));
  if (out_len < 0) throw Error(ErrorKind::InvalidArgument, "negative output length");
  const Eigen::Index span = frames.cols() == 0 ? 0 : (frames.cols() - 1) * plan.hop + plan.frame_len;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(std::max(span, out_len));
  for (Eigen::Index k = 0; k < frames.cols(); ++k)
    acc.segment(k * plan.hop, plan.frame_len) += frames.col(k).cwiseProduct(plan.synthesis_window);
  Waveform out;
  out.samples = acc.head(out_len);
  return out;
}

}  // namespace voxanon
