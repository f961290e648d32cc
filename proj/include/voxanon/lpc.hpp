// voxanon/lpc.hpp

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

// All-pole modelling of short frames: autocorrelation, Levinson-Durbin,
// inverse/synthesis filtering and conversion between predictor
// coefficients and pole positions.
//
// Coefficients a_1..a_p define A(z) = 1 + sum_k a_k z^-k, stored without
// the leading 1. The poles are the roots of z^p + a_1 z^(p-1) + ... + a_p.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "voxanon/error.hpp"

namespace voxanon::lpc {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr Eigen::Index kDefaultOrder = 20;
inline constexpr double kRealPoleTolerance = 1e-9;
inline constexpr double kMaxPoleMagnitude = 0.999;
inline constexpr int kRootIterationCap = 200;

/// r_k = sum_n x[n] x[n+k] for k = 0..order.
template <typename Derived>
Vector<typename Derived::Scalar> autocorrelate(const Eigen::MatrixBase<Derived> &frame, Eigen::Index order) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = frame.size();
  if (n == 0 || order < 0 || order >= n)
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(order) + " needs a frame longer than " + std::to_string(n));
  Vector<Scalar> lags(order + 1);
  for (Eigen::Index k = 0; k <= order; ++k) lags[k] = frame.head(n - k).dot(frame.tail(n - k));
  return lags;
}

template <typename Scalar>
struct Predictor {
  Vector<Scalar> coeffs;
  Vector<Scalar> reflection;
  Scalar gain = 0;
};

/// Solves the normal equations for an order-p forward predictor.
///
/// Unless disabled, the zero lag is first loaded with a tiny white-noise
/// floor, r_0 <- r_0 (1 + 1e-9) + 1e-12, which keeps the Toeplitz system
/// positive definite. Throws DegenerateFrame when r_0 is not positive or a
/// reflection coefficient reaches the unit circle.
template <typename Derived>
Predictor<typename Derived::Scalar> levinson_durbin(const Eigen::MatrixBase<Derived> &lags, Eigen::Index order,
                                                    bool regularize = true) {
  using Scalar = typename Derived::Scalar;
  if (order < 0 || order >= lags.size())
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(order) + " with " + std::to_string(lags.size()) + " lags");
  Vector<Scalar> r = lags;
  if (!(r[0] > Scalar(0)) || !std::isfinite(double(r[0])))
    throw Error(ErrorKind::DegenerateFrame, "zero-lag autocorrelation is not positive");
  if (regularize) r[0] = r[0] * Scalar(1 + 1e-9) + Scalar(1e-12);

  Predictor<Scalar> out;
  out.coeffs = Vector<Scalar>::Zero(order);
  out.reflection = Vector<Scalar>::Zero(order);
  Vector<Scalar> prev(order);
  Scalar err = r[0];
  for (Eigen::Index i = 0; i < order; ++i) {
    Scalar acc = r[i + 1];
    for (Eigen::Index j = 0; j < i; ++j) acc += out.coeffs[j] * r[i - j];
    const Scalar k = -acc / err;
    if (!(std::abs(k) < Scalar(1)))
      throw Error(ErrorKind::DegenerateFrame, "reflection coefficient " + std::to_string(double(k)));
    prev.head(i) = out.coeffs.head(i);
    for (Eigen::Index j = 0; j < i; ++j) out.coeffs[j] = prev[j] + k * prev[i - 1 - j];
    out.coeffs[i] = k;
    out.reflection[i] = k;
    err *= (Scalar(1) - k * k);
  }
  out.gain = std::sqrt(std::max(err, Scalar(0)));
  return out;
}

/// Recovers reflection coefficients from predictor coefficients by running
/// the recursion backwards. Returns false if the polynomial is not minimum
/// phase (some |k| >= 1).
template <typename Derived>
bool step_down(const Eigen::MatrixBase<Derived> &coeffs, Vector<typename Derived::Scalar> *reflection = nullptr) {
  using Scalar = typename Derived::Scalar;
  Vector<Scalar> a = coeffs;
  const Eigen::Index p = a.size();
  if (reflection) reflection->resize(p);
  for (Eigen::Index i = p; i >= 1; --i) {
    const Scalar k = a[i - 1];
    if (!(std::abs(k) < Scalar(1))) return false;
    if (reflection) (*reflection)[i - 1] = k;
    const Scalar denom = Scalar(1) - k * k;
    Vector<Scalar> next(i - 1);
    for (Eigen::Index j = 0; j < i - 1; ++j) next[j] = (a[j] - k * a[i - 2 - j]) / denom;
    a = next;
  }
  return true;
}

template <typename Derived>
bool is_minimum_phase(const Eigen::MatrixBase<Derived> &coeffs) {
  return step_down(coeffs);
}

/// e[n] = x[n] + sum_k a_k x[n-k], zero initial state.
template <typename DerivedX, typename DerivedA>
Vector<typename DerivedX::Scalar> inverse_filter(const Eigen::MatrixBase<DerivedX> &x,
                                                 const Eigen::MatrixBase<DerivedA> &coeffs) {
  using Scalar = typename DerivedX::Scalar;
  const Eigen::Index n = x.size();
  const Eigen::Index p = coeffs.size();
  Vector<Scalar> e(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar acc = x[i];
    const Eigen::Index kmax = std::min(p, i);
    for (Eigen::Index k = 1; k <= kmax; ++k) acc += coeffs[k - 1] * x[i - k];
    e[i] = acc;
  }
  return e;
}

/// y[n] = e[n] - sum_k a_k y[n-k], zero initial state. Throws UnstableFilter
/// if A(z) has a root on or outside the unit circle.
template <typename DerivedE, typename DerivedA>
Vector<typename DerivedE::Scalar> synthesis_filter(const Eigen::MatrixBase<DerivedE> &residual,
                                                   const Eigen::MatrixBase<DerivedA> &coeffs) {
  using Scalar = typename DerivedE::Scalar;
  if (!is_minimum_phase(coeffs)) throw Error(ErrorKind::UnstableFilter, "synthesis polynomial is not minimum phase");
  const Eigen::Index n = residual.size();
  const Eigen::Index p = coeffs.size();
  Vector<Scalar> y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar acc = residual[i];
    const Eigen::Index kmax = std::min(p, i);
    for (Eigen::Index k = 1; k <= kmax; ++k) acc -= coeffs[k - 1] * y[i - k];
    y[i] = acc;
  }
  if (!y.allFinite()) throw Error(ErrorKind::UnstableFilter, "synthesis output is not finite");
  return y;
}

/// Evaluates z^p + a_1 z^(p-1) + ... + a_p and its derivative by Horner's rule.
template <typename Scalar, typename Derived>
std::complex<Scalar> eval_monic(const Eigen::MatrixBase<Derived> &coeffs, std::complex<Scalar> z,
                                std::complex<Scalar> *derivative = nullptr) {
  std::complex<Scalar> value(1), slope(0);
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    slope = slope * z + value;
    value = value * z + Scalar(coeffs[k]);
  }
  if (derivative) *derivative = slope;
  return value;
}

/// Roots of the monic polynomial as the eigenvalues of its companion matrix,
/// each refined by a few Newton steps. Throws NonConvergence if the QR
/// iteration stalls or a refined root still leaves a residual above 1e-8
/// relative to the polynomial's scale at that point.
template <typename Derived>
std::vector<std::complex<typename Derived::Scalar>> polynomial_roots(const Eigen::MatrixBase<Derived> &coeffs) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Complex = std::complex<Scalar>;
  const Eigen::Index p = coeffs.size();
  if (p < 1) throw Error(ErrorKind::InvalidArgument, "root finding needs order >= 1");
  if (!coeffs.allFinite()) throw Error(ErrorKind::InvalidArgument, "non-finite coefficients");

  Matrix companion = Matrix::Zero(p, p);
  companion.row(0) = -coeffs.transpose();
  if (p > 1) companion.diagonal(-1).setOnes();

  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(kRootIterationCap);
  solver.compute(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "companion QR did not converge");

  std::vector<Complex> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + p);
  for (Complex &z : roots) {
    Complex slope;
    Complex value = eval_monic<Scalar>(coeffs, z, &slope);
    for (int it = 0; it < 3 && std::abs(slope) > Scalar(0); ++it) {
      const Complex candidate = z - value / slope;
      Complex cand_slope;
      const Complex cand_value = eval_monic<Scalar>(coeffs, candidate, &cand_slope);
      if (!(std::abs(cand_value) < std::abs(value))) break;
      z = candidate;
      value = cand_value;
      slope = cand_slope;
    }
    // Scale of the polynomial terms at |z|, used for the relative residual.
    const Scalar mag = std::abs(z);
    Scalar scale = std::pow(mag, Scalar(p));
    for (Eigen::Index k = 0; k < p; ++k) scale += std::abs(coeffs[k]) * std::pow(mag, Scalar(p - 1 - k));
    if (std::abs(value) > Scalar(1e-8) * scale)
      throw Error(ErrorKind::NonConvergence, "root residual " + std::to_string(double(std::abs(value))));
  }
  return roots;
}

/// Pole multiset of a real polynomial, conjugate-closed by construction:
/// real poles are stored once, complex poles as their upper-half-plane member.
template <typename Scalar>
class PoleSet {
 public:
  using Complex = std::complex<Scalar>;

  PoleSet() = default;
  PoleSet(std::vector<Scalar> real, std::vector<Complex> upper) : real_(std::move(real)), upper_(std::move(upper)) {
    for (const Complex &z : upper_)
      if (!(z.imag() > Scalar(0))) throw Error(ErrorKind::ConjugateViolation, "pair member not in upper half plane");
  }

  /// Roots with |Im| below tolerance become real poles. The rest are paired
  /// greedily with the nearest conjugate and symmetrized to the mean
  /// magnitude and mean absolute phase of the two.
  static PoleSet from_roots(std::span<const Complex> roots, Scalar real_tolerance = Scalar(kRealPoleTolerance)) {
    std::vector<Scalar> real;
    std::vector<Complex> upper, lower;
    for (const Complex &z : roots) {
      if (std::abs(z.imag()) < real_tolerance)
        real.push_back(z.real());
      else if (z.imag() > 0)
        upper.push_back(z);
      else
        lower.push_back(z);
    }
    // Unequal halves only happen for roots hugging the real axis; demote the
    // surplus members closest to it.
    auto demote = [&real](std::vector<Complex> &side, std::size_t keep) {
      std::sort(side.begin(), side.end(),
                [](const Complex &a, const Complex &b) { return std::abs(a.imag()) > std::abs(b.imag()); });
      while (side.size() > keep) {
        real.push_back(side.back().real());
        side.pop_back();
      }
    };
    const std::size_t pairs = std::min(upper.size(), lower.size());
    demote(upper, pairs);
    demote(lower, pairs);

    std::vector<Complex> matched;
    matched.reserve(pairs);
    std::vector<bool> used(lower.size(), false);
    for (const Complex &u : upper) {
      std::size_t best = 0;
      Scalar best_dist = std::numeric_limits<Scalar>::infinity();
      for (std::size_t j = 0; j < lower.size(); ++j) {
        if (used[j]) continue;
        const Scalar d = std::abs(std::conj(lower[j]) - u);
        if (d < best_dist) {
          best_dist = d;
          best = j;
        }
      }
      used[best] = true;
      const Complex &l = lower[best];
      const Scalar mag = (std::abs(u) + std::abs(l)) / 2;
      const Scalar phase = (std::arg(u) - std::arg(l)) / 2;
      matched.push_back(std::polar(mag, phase));
    }
    return PoleSet(std::move(real), std::move(matched));
  }

  const std::vector<Scalar> &real_poles() const { return real_; }
  const std::vector<Complex> &upper_poles() const { return upper_; }
  Eigen::Index size() const { return Eigen::Index(real_.size() + 2 * upper_.size()); }

  /// Every pole, conjugates included.
  std::vector<Complex> all() const {
    std::vector<Complex> out;
    out.reserve(std::size_t(size()));
    for (Scalar r : real_) out.emplace_back(r, Scalar(0));
    for (const Complex &z : upper_) {
      out.push_back(z);
      out.push_back(std::conj(z));
    }
    return out;
  }

  Scalar max_magnitude() const {
    Scalar m = 0;
    for (Scalar r : real_) m = std::max(m, std::abs(r));
    for (const Complex &z : upper_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Pulls every pole with magnitude >= limit onto the circle of radius limit.
  PoleSet clamped(Scalar limit = Scalar(kMaxPoleMagnitude)) const {
    PoleSet out = *this;
    for (Scalar &r : out.real_)
      if (std::abs(r) >= limit) r = std::copysign(limit, r);
    for (Complex &z : out.upper_)
      if (std::abs(z) >= limit) z = std::polar(limit, std::arg(z));
    return out;
  }

  /// Applies phase_map to the phase of each complex pair, keeping magnitudes.
  /// Real poles are left as they are.
  template <typename PhaseMap>
  PoleSet with_mapped_phases(PhaseMap phase_map) const {
    PoleSet out = *this;
    for (Complex &z : out.upper_) z = std::polar(std::abs(z), Scalar(phase_map(std::arg(z))));
    return out;
  }

 private:
  std::vector<Scalar> real_;
  std::vector<Complex> upper_;
};

template <typename Derived>
PoleSet<typename Derived::Scalar> find_poles(const Eigen::MatrixBase<Derived> &coeffs) {
  using Scalar = typename Derived::Scalar;
  const auto roots = polynomial_roots(coeffs);
  return PoleSet<Scalar>::from_roots(std::span<const std::complex<Scalar>>(roots));
}

namespace detail {

template <typename Scalar>
void multiply_factor(Vector<Scalar> &poly, std::initializer_list<Scalar> factor) {
  Vector<Scalar> out = Vector<Scalar>::Zero(poly.size() + Eigen::Index(factor.size()) - 1);
  Eigen::Index shift = 0;
  for (Scalar f : factor) {
    out.segment(shift, poly.size()) += f * poly;
    ++shift;
  }
  poly = out;
}

}  // namespace detail

/// Predictor coefficients (without the leading 1) of prod (1 - p_i z^-1),
/// built from real linear and quadratic factors.
template <typename Scalar>
Vector<Scalar> poles_to_coeffs(const PoleSet<Scalar> &poles) {
  Vector<Scalar> poly = Vector<Scalar>::Ones(1);
  for (Scalar r : poles.real_poles()) detail::multiply_factor<Scalar>(poly, {Scalar(1), -r});
  for (const auto &z : poles.upper_poles())
    detail::multiply_factor<Scalar>(poly, {Scalar(1), Scalar(-2) * z.real(), std::norm(z)});
  return poly.tail(poly.size() - 1);
}

/// Expands an arbitrary pole multiset in complex arithmetic. Throws
/// ConjugateViolation when the expansion is not real to within tolerance.
template <typename Scalar>
Vector<Scalar> expand_poles(std::span<const std::complex<Scalar>> poles,
                            Scalar imag_tolerance = Scalar(kRealPoleTolerance)) {
  using Complex = std::complex<Scalar>;
  std::vector<Complex> poly{Complex(1)};
  for (const Complex &p : poles) {
    poly.push_back(Complex(0));
    for (std::size_t k = poly.size() - 1; k >= 1; --k) poly[k] -= p * poly[k - 1];
  }
  Vector<Scalar> coeffs(Eigen::Index(poles.size()));
  for (std::size_t k = 1; k < poly.size(); ++k) {
    if (std::abs(poly[k].imag()) > imag_tolerance)
      throw Error(ErrorKind::ConjugateViolation,
                  "coefficient " + std::to_string(k) + " has imaginary part " + std::to_string(double(poly[k].imag())));
    coeffs[Eigen::Index(k - 1)] = poly[k].real();
  }
  return coeffs;
}

/// Per-frame all-pole model with the excitation kept for resynthesis.
template <typename Scalar>
struct LpcFrame {
  Vector<Scalar> coeffs;
  Scalar gain = 0;
  Vector<Scalar> residual;

  Eigen::Index order() const { return coeffs.size(); }
};

/// Autocorrelation-method analysis of one windowed frame.
template <typename Derived>
LpcFrame<typename Derived::Scalar> analyze_frame(const Eigen::MatrixBase<Derived> &frame, Eigen::Index order) {
  const auto lags = autocorrelate(frame, order);
  const auto pred = levinson_durbin(lags, order);
  LpcFrame<typename Derived::Scalar> out;
  out.coeffs = pred.coeffs;
  out.gain = pred.gain;
  out.residual = inverse_filter(frame, pred.coeffs);
  return out;
}

/// Log-magnitude envelope gain / |A(e^jw)| in dB at `bins` frequencies
/// uniformly spaced over [0, pi).
template <typename Scalar>
Vector<Scalar> envelope_db(const Vector<Scalar> &coeffs, Scalar gain, Eigen::Index bins) {
  Vector<Scalar> out(bins);
  for (Eigen::Index b = 0; b < bins; ++b) {
    const Scalar w = std::numbers::pi_v<Scalar> * Scalar(b) / Scalar(bins);
    std::complex<Scalar> a(1);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) a += coeffs[k] * std::polar(Scalar(1), -w * Scalar(k + 1));
    out[b] = Scalar(20) * std::log10(std::max(gain, Scalar(1e-300)) / std::abs(a));
  }
  return out;
}

}  // namespace voxanon::lpc
