// voxanon/toy_embedding.cpp

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

#include "voxanon/toy_embedding.hpp"

#include "voxanon/error.hpp"
#include "voxanon/lpc.hpp"

namespace voxanon {

Eigen::VectorXd toy_embedding(const Waveform &w, Eigen::Index lpc_order, Eigen::Index bins, const FramePlan &plan) {
  const Eigen::MatrixXd frames = frame_signal(w, plan);
  const Eigen::VectorXd energy = frames.colwise().squaredNorm().transpose();
  const double floor = 1e-3 * energy.maxCoeff();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(bins);
  int used = 0;
  for (Eigen::Index k = 0; k < frames.cols(); ++k) {
    if (!(energy[k] > floor) || energy[k] <= 1e-10) continue;
    try {
      const auto lags = lpc::autocorrelate(frames.col(k), lpc_order);
      const auto pred = lpc::levinson_durbin(lags, lpc_order);
      // Unit gain: the embedding should describe the envelope shape only.
      acc += lpc::envelope_db<double>(pred.coeffs, 1.0, bins);
      ++used;
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::DegenerateFrame) throw;
    }
  }
  if (used == 0) throw Error(ErrorKind::DegenerateFrame, "no voiced frames for embedding");
  acc /= double(used);
  acc.array() -= acc.mean();
  return acc;
}

}  // namespace voxanon
