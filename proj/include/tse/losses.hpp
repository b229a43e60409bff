// Copyright 2026 The tsekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSE_LOSSES_HPP
#define TSE_LOSSES_HPP

#include <optional>
#include <vector>

#include "tse/region.hpp"

namespace tse {

// Balance coefficients of the combined and target-weighted losses.
struct LossWeights {
  double alpha = 1.0;  // time-domain MSE weight
  double beta = 1.0;   // SI-SDR weight
  double tau = 1.5;    // target-region weight
};

// Ablation switches for the loss grid (frequency / time / SI-SDR terms);
// the target-weighted term is off when tau == 0 in LossWeights.
struct LossSelect {
  bool fmse = true;
  bool tmse = true;
  bool sisdr = true;
};

enum class Reduction { kSum, kMean };

inline constexpr double kProbEps = 1e-7;

// ---------------------------------------------------------------------------
// Frequency-domain MSE over magnitude bins, 1/(T*F) normalization.

template <typename S>
S freq_mse(const Spectrogram<S>& s_hat, const Spectrogram<S>& s) {
  if (s_hat.bins.rows() != s.bins.rows() || s_hat.bins.cols() != s.bins.cols())
    throw ShapeMismatch("freq_mse: spectrogram shapes differ");
  const S norm = S(1) / static_cast<S>(s.bins.size());
  return norm * (s.bins.cwiseAbs() - s_hat.bins.cwiseAbs()).array().square().sum();
}

// Gradient with respect to the complex bins of s_hat, stored as
// d/dRe + i*d/dIm. Zero wherever |s_hat| is exactly zero.
template <typename S>
CMat<S> freq_mse_grad(const Spectrogram<S>& s_hat, const Spectrogram<S>& s) {
  if (s_hat.bins.rows() != s.bins.rows() || s_hat.bins.cols() != s.bins.cols())
    throw ShapeMismatch("freq_mse_grad: spectrogram shapes differ");
  const S norm = S(2) / static_cast<S>(s.bins.size());
  CMat<S> g(s.bins.rows(), s.bins.cols());
  for (Index c = 0; c < g.cols(); ++c) {
    for (Index r = 0; r < g.rows(); ++r) {
      const std::complex<S> z = s_hat.bins(r, c);
      const S mag = std::abs(z);
      g(r, c) = (mag > S(0))
                    ? (norm * (mag - std::abs(s.bins(r, c))) / mag) * z
                    : std::complex<S>(0, 0);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Time-domain MSE, 1/N normalization.

template <typename S>
S time_mse(const Vec<S>& y_hat, const Vec<S>& y) {
  if (y_hat.size() != y.size()) throw ShapeMismatch("time_mse: lengths differ");
  return (y - y_hat).square().sum() / static_cast<S>(y.size());
}

template <typename S>
Vec<S> time_mse_grad(const Vec<S>& y_hat, const Vec<S>& y) {
  if (y_hat.size() != y.size()) throw ShapeMismatch("time_mse_grad: lengths differ");
  return S(2) / static_cast<S>(y.size()) * (y_hat - y);
}

// ---------------------------------------------------------------------------
// Negated SI-SDR, so that minimizing the loss maximizes SI-SDR.

template <typename S>
S sisdr_loss(const Vec<S>& y_hat, const Vec<S>& y, double clamp_db = kSiSdrClampDb) {
  return static_cast<S>(-si_sdr(y_hat, y, clamp_db));
}

template <typename S>
Vec<S> sisdr_loss_grad(const Vec<S>& y_hat, const Vec<S>& y,
                       double clamp_db = kSiSdrClampDb) {
  if (y_hat.size() != y.size()) throw ShapeMismatch("sisdr_loss_grad: lengths differ");
  const double value = si_sdr(y_hat, y, clamp_db);
  if (std::abs(value) >= clamp_db) return Vec<S>::Zero(y.size());  // clamped: flat

  VecD v = y.template cast<double>();
  VecD u = y_hat.template cast<double>();
  v -= v.mean();
  u -= u.mean();
  const double vv = v.square().sum();
  const double d = (u * v).sum();
  const double target_energy = d * d / vv;
  const double err_energy = u.square().sum() - target_energy;

  const double c = 10.0 / std::log(10.0);
  // loss = -c (ln T - ln E); dT/du = 2 d v / vv; dE/du = 2u - 2 d v / vv
  VecD g = -c * ((2.0 * d / vv / target_energy) * v -
                 (2.0 / err_energy) * (u - (d / vv) * v));
  g -= g.mean() * VecD::Ones(g.size());  // adjoint of the zero-mean projection
  return g.template cast<S>();
}

// ---------------------------------------------------------------------------
// Combined time-frequency loss (whole clip).

template <typename S>
S tse_loss(const Vec<S>& y_hat, const Vec<S>& y, const Spectrogram<S>& s_hat,
           const Spectrogram<S>& s, const LossWeights& w,
           const LossSelect& sel = LossSelect{}) {
  S out = S(0);
  if (sel.fmse) out += freq_mse(s_hat, s);
  if (sel.tmse) out += static_cast<S>(w.alpha) * time_mse(y_hat, y);
  if (sel.sisdr) out += static_cast<S>(w.beta) * sisdr_loss(y_hat, y);
  return out;
}

namespace detail {

template <typename S>
Vec<S> gather(const Vec<S>& x, const std::vector<Index>& idx) {
  Vec<S> out(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out[static_cast<Index>(i)] = x[idx[i]];
  return out;
}

template <typename S>
Spectrogram<S> gather_frames(const Spectrogram<S>& s, const std::vector<Index>& idx) {
  Spectrogram<S> out;
  out.frame_spec = s.frame_spec;
  out.sample_rate = s.sample_rate;
  out.analysis_length = s.analysis_length;
  out.bins.resize(s.bins.rows(), static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    out.bins.col(static_cast<Index>(i)) = s.bins.col(idx[i]);
  return out;
}

}  // namespace detail

// Target-region loss: the same Eq.-5..7 terms evaluated on the samples and
// spectrogram frames that fall inside the mask.
template <typename S>
S tse_loss_target(const Vec<S>& y_hat, const Vec<S>& y, const Spectrogram<S>& s_hat,
                  const Spectrogram<S>& s, const RegionMask& mask, const LossWeights& w,
                  const LossSelect& sel = LossSelect{}) {
  const int sr = s.sample_rate;
  const std::vector<Index> samples = mask.sample_indices(y.size(), sr);
  const std::vector<Index> frames = mask.frame_indices(s.frame_spec, s.analysis_length, sr);
  if (samples.size() < 2 || frames.empty())
    throw EmptyRegion("tse_loss_target: region selects fewer than 2 samples or no frames");

  const Vec<S> yh = detail::gather(y_hat, samples);
  const Vec<S> yr = detail::gather(y, samples);
  const Spectrogram<S> sh = detail::gather_frames(s_hat, frames);
  const Spectrogram<S> sr_ = detail::gather_frames(s, frames);
  return tse_loss(yh, yr, sh, sr_, w, sel);
}

// Target-weighted time-frequency loss: whole-clip loss plus tau times the
// target-region loss.
template <typename S>
S tse_loss_weighted(const Vec<S>& y_hat, const Vec<S>& y, const Spectrogram<S>& s_hat,
                    const Spectrogram<S>& s, const RegionMask& mask, const LossWeights& w,
                    const LossSelect& sel = LossSelect{}) {
  S out = tse_loss(y_hat, y, s_hat, s, w, sel);
  if (w.tau != 0.0) out += static_cast<S>(w.tau) * tse_loss_target(y_hat, y, s_hat, s, mask, w, sel);
  return out;
}

// ---------------------------------------------------------------------------
// Detection BCE over frames (natural log, sum reduction as printed).

template <typename S>
S tsd_bce(const Vec<S>& scores, const Vec<S>& labels, Reduction red = Reduction::kSum) {
  if (scores.size() != labels.size()) throw ShapeMismatch("tsd_bce: lengths differ");
  const S lo = static_cast<S>(kProbEps), hi = S(1) - static_cast<S>(kProbEps);
  S acc = S(0);
  for (Index i = 0; i < scores.size(); ++i) {
    const S p = std::clamp(scores[i], lo, hi);
    acc -= labels[i] * std::log(p) + (S(1) - labels[i]) * std::log(S(1) - p);
  }
  return red == Reduction::kMean ? acc / static_cast<S>(scores.size()) : acc;
}

template <typename S>
Vec<S> tsd_bce_grad(const Vec<S>& scores, const Vec<S>& labels,
                    Reduction red = Reduction::kSum) {
  if (scores.size() != labels.size()) throw ShapeMismatch("tsd_bce_grad: lengths differ");
  const S lo = static_cast<S>(kProbEps), hi = S(1) - static_cast<S>(kProbEps);
  Vec<S> g(scores.size());
  for (Index i = 0; i < scores.size(); ++i) {
    if (scores[i] <= lo || scores[i] >= hi) {
      g[i] = S(0);  // inside the clipped flats
      continue;
    }
    g[i] = -labels[i] / scores[i] + (S(1) - labels[i]) / (S(1) - scores[i]);
  }
  if (red == Reduction::kMean) g /= static_cast<S>(scores.size());
  return g;
}

// Per-class binary cross-entropy summed over classes (the printed form);
// probs are independent sigmoid outputs, label is a 0/1 vector.
template <typename S>
S cls_ce(const Vec<S>& probs, const Vec<S>& label, Reduction red = Reduction::kSum) {
  return tsd_bce(probs, label, red);
}

template <typename S>
Vec<S> cls_ce_grad(const Vec<S>& probs, const Vec<S>& label,
                   Reduction red = Reduction::kSum) {
  return tsd_bce_grad(probs, label, red);
}

// ---------------------------------------------------------------------------
// Joint objectives.

template <typename S>
S tse_joint_loss(const Vec<S>& y_hat, const Vec<S>& y, const Spectrogram<S>& s_hat,
                 const Spectrogram<S>& s, const RegionMask& mask, const LossWeights& w,
                 const Vec<S>& cls_probs, const Vec<S>& cls_label,
                 const LossSelect& sel = LossSelect{}) {
  return tse_loss_weighted(y_hat, y, s_hat, s, mask, w, sel) + cls_ce(cls_probs, cls_label);
}

template <typename S>
S tsd_joint_loss(const Vec<S>& scores, const Vec<S>& labels, const Vec<S>& cls_probs,
                 const Vec<S>& cls_label) {
  return tsd_bce(scores, labels) + cls_ce(cls_probs, cls_label);
}

// ---------------------------------------------------------------------------
// Fused evaluation for training: the target-weighted loss of a waveform
// estimate, its component breakdown, and the analytic gradient with respect
// to the estimate (the frequency terms are pulled back through the STFT
// adjoint, the region terms scattered back to their source positions).

template <typename S>
struct TseLossBreakdown {
  S total = S(0);
  S fmse = S(0);
  S tmse = S(0);
  S sisdr = S(0);
  S target = S(0);  // combined target-region term (unscaled by tau)
};

template <typename S>
TseLossBreakdown<S> tse_loss_weighted_with_grad(
    const Vec<S>& y_hat, const Vec<S>& y, const FrameSpec& spec, int sample_rate,
    const RegionMask& mask, const LossWeights& w, const LossSelect& sel,
    std::type_identity_t<Vec<S>*> grad_out = nullptr) {
  const Index n = y.size();
  if (y_hat.size() != n) throw ShapeMismatch("tse_loss_weighted_with_grad: lengths differ");

  TseLossBreakdown<S> out;
  Vec<S> grad = Vec<S>::Zero(n);

  std::optional<Spectrogram<S>> sh, sr;
  CMat<S> bin_grad;
  if (sel.fmse) {
    sh = stft(Waveform<S>{y_hat, sample_rate}, spec);
    sr = stft(Waveform<S>{y, sample_rate}, spec);
    out.fmse = freq_mse(*sh, *sr);
    bin_grad = freq_mse_grad(*sh, *sr);
  }
  if (sel.tmse) {
    out.tmse = time_mse(y_hat, y);
    grad += static_cast<S>(w.alpha) * time_mse_grad(y_hat, y);
  }
  if (sel.sisdr) {
    out.sisdr = sisdr_loss(y_hat, y);
    grad += static_cast<S>(w.beta) * sisdr_loss_grad(y_hat, y);
  }
  out.total = (sel.fmse ? out.fmse : S(0)) +
              (sel.tmse ? static_cast<S>(w.alpha) * out.tmse : S(0)) +
              (sel.sisdr ? static_cast<S>(w.beta) * out.sisdr : S(0));

  if (w.tau != 0.0) {
    const std::vector<Index> samples = mask.sample_indices(n, sample_rate);
    const std::vector<Index> frames =
        sel.fmse ? mask.frame_indices(spec, n, sample_rate) : std::vector<Index>{};
    if (samples.size() < 2 || (sel.fmse && frames.empty()))
      throw EmptyRegion("tse_loss_weighted_with_grad: empty target region");
    const S tau = static_cast<S>(w.tau);

    const Vec<S> yh = detail::gather(y_hat, samples);
    const Vec<S> yr = detail::gather(y, samples);
    S target = S(0);
    Vec<S> region_grad = Vec<S>::Zero(static_cast<Index>(samples.size()));
    if (sel.tmse) {
      target += static_cast<S>(w.alpha) * time_mse(yh, yr);
      region_grad += static_cast<S>(w.alpha) * time_mse_grad(yh, yr);
    }
    if (sel.sisdr) {
      target += static_cast<S>(w.beta) * sisdr_loss(yh, yr);
      region_grad += static_cast<S>(w.beta) * sisdr_loss_grad(yh, yr);
    }
    for (std::size_t i = 0; i < samples.size(); ++i)
      grad[samples[i]] += tau * region_grad[static_cast<Index>(i)];

    if (sel.fmse) {
      const Spectrogram<S> shr = detail::gather_frames(*sh, frames);
      const Spectrogram<S> srr = detail::gather_frames(*sr, frames);
      target += freq_mse(shr, srr);
      const CMat<S> region_bin_grad = freq_mse_grad(shr, srr);
      for (std::size_t i = 0; i < frames.size(); ++i)
        bin_grad.col(frames[i]) += tau * region_bin_grad.col(static_cast<Index>(i));
    }
    out.target = target;
    out.total += tau * target;
  }

  if (sel.fmse) grad += stft_adjoint<S>(bin_grad, spec, n);
  if (grad_out != nullptr) *grad_out = std::move(grad);
  return out;
}

}  // namespace tse

#endif  // TSE_LOSSES_HPP
