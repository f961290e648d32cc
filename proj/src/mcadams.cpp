// voxanon/mcadams.cpp

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

#include "voxanon/mcadams.hpp"

#include <cmath>
#include <numbers>

#include "voxanon/error.hpp"
#include "voxanon/parallel.hpp"

namespace voxanon {

namespace {

// Frames whose zero-lag energy is below this are treated as silence.
constexpr double kSilenceEnergy = 1e-10;

}  // namespace

void McAdamsConfig::validate() const {
  if (!(alpha_min > 0.0 && alpha_min <= alpha_max && alpha_max < 1.0))
    throw Error(ErrorKind::InvalidArgument, "alpha range must satisfy 0 < alpha_min <= alpha_max < 1, got [" +
                                                std::to_string(alpha_min) + ", " + std::to_string(alpha_max) + "]");
  plan.validate();
  if (lpc_order < 1 || lpc_order >= plan.frame_len)
    throw Error(ErrorKind::InvalidArgument, "lpc order " + std::to_string(lpc_order) + " out of range");
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double keyed_uniform(std::uint64_t seed, std::string_view utterance_id) {
  const std::uint64_t x = splitmix64(seed ^ splitmix64(fnv1a64(utterance_id)));
  return double(x >> 11) * 0x1.0p-53;
}

UtteranceDraw draw_alpha(const McAdamsConfig &cfg, std::string_view utterance_id) {
  cfg.validate();
  UtteranceDraw d;
  d.utterance_id = std::string(utterance_id);
  if (cfg.alpha_min == cfg.alpha_max) {
    d.alpha = cfg.alpha_min;
  } else {
    d.alpha = cfg.alpha_min + keyed_uniform(cfg.master_seed, utterance_id) * (cfg.alpha_max - cfg.alpha_min);
    // Rounding can land exactly on the open upper edge.
    if (d.alpha >= cfg.alpha_max) d.alpha = std::nextafter(cfg.alpha_max, cfg.alpha_min);
  }
  return d;
}

double transform_phase(double phi, double alpha) {
  if (!(phi > 0.0 && phi < std::numbers::pi))
    throw Error(ErrorKind::DomainError, "phase " + std::to_string(phi) + " outside (0, pi)");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::DomainError, "alpha " + std::to_string(alpha) + " outside (0, 1]");
  return std::pow(phi, alpha);
}

FrameResult anonymize_frame(const lpc::LpcFrame<double> &f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::DomainError, "alpha " + std::to_string(alpha) + " outside (0, 1]");
  FrameResult out;
  out.frame = f;
  if (f.order() == 0) return out;
  lpc::PoleSet<double> poles;
  try {
    poles = lpc::find_poles(f.coeffs);
  } catch (const Error &e) {
    if (e.kind() != ErrorKind::NonConvergence) throw;
    out.passthrough = true;
    return out;
  }
  const auto moved = poles.with_mapped_phases([alpha](double phi) { return transform_phase(phi, alpha); })
                         .clamped(lpc::kMaxPoleMagnitude);
  out.frame.coeffs = lpc::poles_to_coeffs(moved);
  return out;
}

AnonymizationResult anonymize_with_alpha(const Waveform &w, double alpha, const McAdamsConfig &cfg) {
  if (w.sample_rate != kSampleRate)
    throw Error(ErrorKind::UnsupportedFormat, "sample rate " + std::to_string(w.sample_rate));
  if (w.size() == 0) throw Error(ErrorKind::EmptySignal, "cannot anonymize an empty waveform");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::DomainError, "alpha " + std::to_string(alpha) + " outside (0, 1]");
  cfg.plan.validate();
  if (cfg.lpc_order < 1 || cfg.lpc_order >= cfg.plan.frame_len)
    throw Error(ErrorKind::InvalidArgument, "lpc order " + std::to_string(cfg.lpc_order) + " out of range");

  AnonymizationResult result;
  result.alpha = alpha;
  const Eigen::MatrixXd frames = frame_signal(w, cfg.plan);
  Eigen::MatrixXd synthesized = frames;
  result.frames = frames.cols();

  for (Eigen::Index k = 0; k < frames.cols(); ++k) {
    const auto x = frames.col(k);
    const Eigen::VectorXd lags = lpc::autocorrelate(x, cfg.lpc_order);
    if (!(lags[0] > kSilenceEnergy)) {
      ++result.passthrough_frames;
      continue;
    }
    try {
      const auto pred = lpc::levinson_durbin(lags, cfg.lpc_order);
      lpc::LpcFrame<double> analysis{pred.coeffs, pred.gain, lpc::inverse_filter(x, pred.coeffs)};
      const FrameResult modified = anonymize_frame(analysis, alpha);
      if (modified.passthrough) {
        ++result.passthrough_frames;
        continue;
      }
      Eigen::VectorXd y = lpc::synthesis_filter(modified.frame.residual, modified.frame.coeffs);
      if (cfg.match_energy) {
        const double ey = y.squaredNorm();
        if (ey > 0.0) y *= std::sqrt(lags[0] / ey);
      }
      synthesized.col(k) = y;
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::DegenerateFrame && e.kind() != ErrorKind::UnstableFilter) throw;
      ++result.passthrough_frames;
    }
  }

  result.waveform = overlap_add(synthesized, cfg.plan, w.size());
  result.peak_before_clamp = result.waveform.samples.cwiseAbs().maxCoeff();
  result.waveform.samples = result.waveform.samples.cwiseMax(-1.0).cwiseMin(1.0);
  return result;
}

AnonymizationResult anonymize_utterance(const Waveform &w, const McAdamsConfig &cfg, std::string_view utterance_id) {
  const UtteranceDraw draw = draw_alpha(cfg, utterance_id);
  return anonymize_with_alpha(w, draw.alpha, cfg);
}

std::vector<AnonymizationResult> anonymize_batch(const std::vector<BatchItem> &items, const McAdamsConfig &cfg,
                                                 unsigned workers) {
  cfg.validate();
  std::vector<AnonymizationResult> results(items.size());
  parallel_for(items.size(), workers, [&](std::size_t i) {
    try {
      results[i] = anonymize_utterance(items[i].waveform, cfg, items[i].utterance_id);
    } catch (const Error &e) {
      throw Error(e.kind(), "utterance " + items[i].utterance_id + ": " + e.what());
    }
  });
  return results;
}

}  // namespace voxanon
