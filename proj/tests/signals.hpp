// tests/signals.hpp

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

#pragma once

// Synthetic test signals and measurement helpers shared by the unit and
// acceptance suites.

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "voxanon/audio_io.hpp"
#include "voxanon/error.hpp"
#include "voxanon/framing.hpp"
#include "voxanon/lpc.hpp"

namespace signals {

using voxanon::Waveform;

inline Waveform from_vector(const Eigen::VectorXd &x) {
  Waveform w;
  w.samples = x;
  return w;
}

inline Waveform scaled_to_peak(Eigen::VectorXd x, double peak) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m > 0) x *= peak / m;
  return from_vector(x);
}

/// White noise through a single resonance r e^{+-j phi}.
inline Waveform ar2_resonance(double phi, double r, Eigen::Index n, std::mt19937_64 &rng, double peak = 0.5) {
  return scaled_to_peak(oracle::ar_process({-2 * r * std::cos(phi), r * r}, n, rng), peak);
}

struct Formant {
  double freq_hz;
  double bandwidth_hz;
};

/// Glottal pulse train with drifting pitch through a cascade of time-varying
/// two-pole formant resonators, plus a little aspiration noise. Formant
/// targets are updated every 10 ms. `formants` gives the centre values;
/// they wander by +-15% over the signal.
inline Waveform speech_like(double seconds, std::mt19937_64 &rng,
                            std::vector<Formant> formants = {{600, 80}, {1300, 100}, {2500, 140}, {3500, 200}},
                            double f0 = 120.0, double peak = 0.5) {
  const double fs = voxanon::kSampleRate;
  const auto n = Eigen::Index(seconds * fs);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  const double drift_phase = u(rng), pitch_phase = u(rng);

  Eigen::VectorXd src(n);
  double phase = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = double(i) / fs;
    const double pitch = f0 * (1.0 + 0.15 * std::sin(2 * std::numbers::pi * 0.7 * t + pitch_phase));
    phase += pitch / fs;
    double s = 0;
    if (phase >= 1.0) {
      phase -= 1.0;
      s = 1.0;
    }
    src[i] = s + 0.02 * noise(rng);
  }

  Eigen::VectorXd y = src;
  for (std::size_t f = 0; f < formants.size(); ++f) {
    Eigen::VectorXd out(n);
    double y1 = 0, y2 = 0, a1 = 0, a2 = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i % 160 == 0) {
        const double t = double(i) / fs;
        const double wobble = 1.0 + 0.15 * std::sin(2 * std::numbers::pi * (0.3 + 0.2 * double(f)) * t + drift_phase + double(f));
        const double freq = formants[f].freq_hz * wobble;
        const double r = std::exp(-std::numbers::pi * formants[f].bandwidth_hz / fs);
        a1 = -2 * r * std::cos(2 * std::numbers::pi * freq / fs);
        a2 = r * r;
      }
      const double v = y[i] - a1 * y1 - a2 * y2;
      y2 = y1;
      y1 = v;
      out[i] = v;
    }
    y = out;
  }
  return scaled_to_peak(y, peak);
}

/// Complex pole of largest magnitude in an order-p LPC fit of one windowed
/// frame, or nothing for silent frames or all-real fits.
inline std::optional<std::complex<double>> dominant_pole(const Eigen::VectorXd &frame, Eigen::Index order) {
  const auto lags = voxanon::lpc::autocorrelate(frame, order);
  if (lags[0] <= 1e-10) return std::nullopt;
  const auto pred = voxanon::lpc::levinson_durbin(lags, order);
  const auto poles = voxanon::lpc::find_poles(pred.coeffs);
  std::optional<std::complex<double>> best;
  for (const auto &z : poles.upper_poles())
    if (!best || std::abs(z) > std::abs(*best)) best = z;
  return best;
}

/// Fraction of frames whose strongest spectral peak sits within `tol` rad of
/// `target`. Uses 1024-sample Hann frames (hop 512) and an order-`order` LPC
/// envelope sampled on 4096 bins, which resolves a single resonance far
/// better than re-running the 20 ms analysis.
inline double resonance_tracking(const Waveform &w, double target, double tol, Eigen::Index order = 20) {
  voxanon::FramePlan plan = voxanon::FramePlan::sqrt_hann(1024, 512);
  plan.analysis_window = voxanon::periodic_hann(1024);
  const Eigen::MatrixXd frames = voxanon::frame_signal(w, plan);
  constexpr Eigen::Index kBins = 4096;
  int hits = 0, total = 0;
  for (Eigen::Index k = 1; k + 1 < frames.cols(); ++k) {
    const auto lags = voxanon::lpc::autocorrelate(frames.col(k), order);
    if (lags[0] <= 1e-10) continue;
    const auto pred = voxanon::lpc::levinson_durbin(lags, order);
    const Eigen::VectorXd env = voxanon::lpc::envelope_db<double>(pred.coeffs, 1.0, kBins);
    Eigen::Index peak;
    env.maxCoeff(&peak);
    ++total;
    if (std::abs(std::numbers::pi * double(peak) / double(kBins) - target) < tol) ++hits;
  }
  return total ? double(hits) / total : 0.0;
}

/// Mean over frames (energy above `floor` times the loudest frame) of the
/// mean absolute difference between the order-p LPC envelopes of a and b,
/// in dB.
inline double mean_envelope_distance_db(const Waveform &a, const Waveform &b, Eigen::Index order = 20,
                                        Eigen::Index bins = 128, double floor = 1e-4) {
  const auto plan = voxanon::FramePlan::standard();
  const Eigen::MatrixXd fa = voxanon::frame_signal(a, plan);
  const Eigen::MatrixXd fb = voxanon::frame_signal(b, plan);
  const double loudest = fa.colwise().squaredNorm().maxCoeff();
  double total = 0;
  int count = 0;
  for (Eigen::Index k = 0; k < fa.cols(); ++k) {
    if (fa.col(k).squaredNorm() < floor * loudest) continue;
    const auto pa = voxanon::lpc::levinson_durbin(voxanon::lpc::autocorrelate(fa.col(k), order), order);
    const auto pb = voxanon::lpc::levinson_durbin(voxanon::lpc::autocorrelate(fb.col(k), order), order);
    const Eigen::VectorXd ea = voxanon::lpc::envelope_db<double>(pa.coeffs, pa.gain, bins);
    const Eigen::VectorXd eb = voxanon::lpc::envelope_db<double>(pb.coeffs, pb.gain, bins);
    total += (ea - eb).cwiseAbs().mean();
    ++count;
  }
  return count ? total / count : 0.0;
}

}  // namespace signals
