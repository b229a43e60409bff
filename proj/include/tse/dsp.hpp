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

#ifndef TSE_DSP_HPP
#define TSE_DSP_HPP

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "tse/common.hpp"

namespace tse {

using Eigen::Index;

template <typename Scalar>
struct Waveform {
  Vec<Scalar> samples;
  int sample_rate = 16000;

  Waveform() = default;
  Waveform(Vec<Scalar> s, int sr) : samples(std::move(s)), sample_rate(sr) {}

  Index size() const { return samples.size(); }
  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

using WaveformF = Waveform<float>;
using WaveformD = Waveform<double>;

enum class WindowFn { kHann, kRect };

// Analysis framing. Frames are taken from a reflect-padded signal (half a
// window on each side), so frame t is centered at sample t*hop of the
// original signal and T = 1 + floor(N/hop) frames cover all of it.
struct FrameSpec {
  int window_size = 512;  // 32 ms at 16 kHz
  int hop_size = 128;     // 8 ms
  WindowFn window_fn = WindowFn::kHann;

  void validate() const {
    if (window_size < 4 || hop_size < 1)
      throw std::invalid_argument("FrameSpec: window/hop out of range");
    if (2 * hop_size > window_size)
      throw std::invalid_argument(
          "FrameSpec: hop must be at most half the window for "
          "overlap-add reconstruction");
  }

  int num_bins() const { return window_size / 2 + 1; }
  Index num_frames(Index n_samples) const {
    return 1 + n_samples / hop_size;
  }
  // Center of frame t, in samples of the unpadded signal.
  double frame_center(Index t) const { return static_cast<double>(t) * hop_size; }
};

template <typename Scalar>
Vec<Scalar> make_window(WindowFn fn, int size) {
  Vec<Scalar> w(size);
  switch (fn) {
    case WindowFn::kHann:
      for (int n = 0; n < size; ++n)
        w[n] = Scalar(0.5) - Scalar(0.5) * std::cos(Scalar(2.0 * M_PI) * n / size);
      break;
    case WindowFn::kRect:
      w.setOnes();
      break;
  }
  return w;
}

template <typename Scalar>
struct Spectrogram {
  // One column per frame, num_bins() rows (window/2 + 1).
  CMat<Scalar> bins;
  FrameSpec frame_spec;
  int sample_rate = 16000;
  Index analysis_length = 0;  // sample count of the analyzed waveform

  Index num_frames() const { return bins.cols(); }
  Index num_bins() const { return bins.rows(); }
  Mat<Scalar> magnitude() const { return bins.cwiseAbs(); }
};

using SpectrogramF = Spectrogram<float>;
using SpectrogramD = Spectrogram<double>;

namespace detail {

// Mirror index without repeating the edge sample (reflect padding).
inline Index reflect_index(Index j, Index n) {
  if (j < 0) j = -j;
  if (j >= n) j = 2 * n - 2 - j;
  return j;
}

template <typename Scalar>
Vec<Scalar> reflect_pad(const Vec<Scalar>& x, Index front, Index back) {
  const Index n = x.size();
  Vec<Scalar> out(front + n + back);
  for (Index i = 0; i < out.size(); ++i)
    out[i] = x[reflect_index(i - front, n)];
  return out;
}

}  // namespace detail

template <typename Scalar>
Spectrogram<Scalar> stft(const Waveform<Scalar>& w, const FrameSpec& spec) {
  spec.validate();
  const Index n = w.size();
  const int win = spec.window_size;
  const int hop = spec.hop_size;
  if (n < win)
    throw InputTooShort("stft: signal of " + std::to_string(n) +
                        " samples is shorter than one window (" +
                        std::to_string(win) + ")");

  const Index frames = spec.num_frames(n);
  const Vec<Scalar> window = make_window<Scalar>(spec.window_fn, win);
  const Vec<Scalar> padded = detail::reflect_pad(w.samples, win / 2, win - win / 2);

  Spectrogram<Scalar> out;
  out.bins.resize(spec.num_bins(), frames);
  out.frame_spec = spec;
  out.sample_rate = w.sample_rate;
  out.analysis_length = n;

  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
  Vec<Scalar> frame(win);
  for (Index t = 0; t < frames; ++t) {
    frame = padded.segment(t * hop, win) * window;
    fft.fwd(out.bins.col(t).data(), frame.data(), win);
  }
  return out;
}

// Weighted overlap-add synthesis; the result is trimmed or zero-padded to
// exactly out_len samples.
template <typename Scalar>
Waveform<Scalar> istft(const Spectrogram<Scalar>& s, Index out_len) {
  const FrameSpec& spec = s.frame_spec;
  spec.validate();
  const int win = spec.window_size;
  const int hop = spec.hop_size;
  if (s.num_bins() != spec.num_bins())
    throw ShapeMismatch("istft: spectrogram has " + std::to_string(s.num_bins()) +
                        " bins but the frame spec implies " +
                        std::to_string(spec.num_bins()));
  const Index frames = s.num_frames();
  if (frames < 1) throw ShapeMismatch("istft: empty spectrogram");

  const Vec<Scalar> window = make_window<Scalar>(spec.window_fn, win);
  const Index padded_len = (frames - 1) * static_cast<Index>(hop) + win;
  Vec<Scalar> num = Vec<Scalar>::Zero(padded_len);
  Vec<Scalar> den = Vec<Scalar>::Zero(padded_len);

  Eigen::FFT<Scalar> fft;
  fft.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum);
  Vec<Scalar> frame(win);
  for (Index t = 0; t < frames; ++t) {
    fft.inv(frame.data(), s.bins.col(t).data(), win);
    num.segment(t * hop, win) += window * frame;
    den.segment(t * hop, win) += window.square();
  }

  const Scalar tiny = Scalar(1e-12);
  Waveform<Scalar> out;
  out.sample_rate = s.sample_rate;
  out.samples = Vec<Scalar>::Zero(out_len);
  const Index avail = std::min<Index>(out_len, padded_len - win / 2);
  for (Index i = 0; i < avail; ++i) {
    const Index p = i + win / 2;
    out.samples[i] = num[p] / std::max(den[p], tiny);
  }
  return out;
}

// Adjoint of stft as a linear map R^n -> C^{bins x frames}: maps a gradient
// with respect to the stored bins (d/dRe + i d/dIm convention) back to a
// gradient with respect to the waveform samples. Mirrors stft exactly:
// unnormalized DFT adjoint, windowing, overlap-add, then folding the
// reflect padding back into the interior.
template <typename Scalar>
Vec<Scalar> stft_adjoint(const CMat<Scalar>& bin_grad, const FrameSpec& spec,
                         Index n_samples) {
  spec.validate();
  const int win = spec.window_size;
  const int hop = spec.hop_size;
  if (bin_grad.rows() != spec.num_bins())
    throw ShapeMismatch("stft_adjoint: bin count mismatch");
  const Index frames = bin_grad.cols();
  if (frames != spec.num_frames(n_samples))
    throw ShapeMismatch("stft_adjoint: frame count inconsistent with n_samples");

  const Vec<Scalar> window = make_window<Scalar>(spec.window_fn, win);
  const Index front = win / 2;
  const Index padded_len = front + n_samples + (win - front);
  Vec<Scalar> padded_grad = Vec<Scalar>::Zero(padded_len);

  Eigen::FFT<Scalar> fft;
  Vec<std::complex<Scalar>> full(win);
  Vec<std::complex<Scalar>> time(win);
  for (Index t = 0; t < frames; ++t) {
    full.setZero();
    full.head(spec.num_bins()) = bin_grad.col(t).array();
    // d/dz_n = sum_k Re(G_k e^{i 2 pi k n / W}) over the stored bins only;
    // Eigen's inverse scales by 1/W, so undo it.
    fft.inv(time.data(), full.data(), win);
    padded_grad.segment(t * hop, win) +=
        window * time.real() * Scalar(win);
  }

  Vec<Scalar> grad = Vec<Scalar>::Zero(n_samples);
  for (Index i = 0; i < padded_len; ++i)
    grad[detail::reflect_index(i - front, n_samples)] += padded_grad[i];
  return grad;
}

// Band-limited rational resampler (windowed-sinc, Kaiser taper). The gain
// is normalized per output sample so a DC input is reproduced exactly.
template <typename Scalar>
Waveform<Scalar> resample(const Waveform<Scalar>& w, int target_rate) {
  if (w.sample_rate <= 0 || target_rate <= 0)
    throw std::invalid_argument("resample: rates must be positive");
  if (target_rate == w.sample_rate) return w;

  const Index n = w.size();
  const Index out_len =
      static_cast<Index>(std::llround(static_cast<double>(n) * target_rate / w.sample_rate));
  Waveform<Scalar> out;
  out.sample_rate = target_rate;
  out.samples = Vec<Scalar>::Zero(out_len);
  if (n == 0 || out_len == 0) return out;

  const std::int64_t g = std::gcd<std::int64_t>(w.sample_rate, target_rate);
  const std::int64_t up = target_rate / g;
  const std::int64_t down = w.sample_rate / g;

  const double cutoff = std::min(1.0, static_cast<double>(up) / down);
  const int zero_crossings = 24;
  const double half_width = zero_crossings / cutoff;
  const double beta = 10.0;
  const double i0_beta = std::cyl_bessel_i(0.0, beta);

  auto kernel = [&](double tau) {
    const double q = tau / half_width;
    if (std::abs(q) >= 1.0) return 0.0;
    const double sinc = (tau == 0.0) ? 1.0 : std::sin(M_PI * cutoff * tau) / (M_PI * cutoff * tau);
    const double taper = std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - q * q)) / i0_beta;
    return cutoff * sinc * taper;
  };

  for (Index m = 0; m < out_len; ++m) {
    const double center = static_cast<double>(m) * down / up;
    const Index lo = std::max<Index>(0, static_cast<Index>(std::ceil(center - half_width)));
    const Index hi = std::min<Index>(n - 1, static_cast<Index>(std::floor(center + half_width)));
    double acc = 0.0, wsum = 0.0;
    for (Index j = lo; j <= hi; ++j) {
      const double h = kernel(j - center);
      acc += h * w.samples[j];
      wsum += h;
    }
    out.samples[m] = static_cast<Scalar>(wsum != 0.0 ? acc / wsum : 0.0);
  }
  return out;
}

// Energy gate: drops frames whose RMS falls below the clip peak plus
// threshold_db. The result may be empty; callers decide whether that is an
// error.
template <typename Scalar>
Waveform<Scalar> trim_silence(const Waveform<Scalar>& w, double threshold_db = -45.0,
                              double frame_ms = 25.0) {
  if (threshold_db >= 0.0)
    throw std::invalid_argument("trim_silence: threshold must be below the peak (dB < 0)");
  const Index n = w.size();
  Waveform<Scalar> out;
  out.sample_rate = w.sample_rate;
  if (n == 0) {
    out.samples.resize(0);
    return out;
  }

  const Index frame_len =
      std::max<Index>(1, static_cast<Index>(std::llround(frame_ms * 1e-3 * w.sample_rate)));
  const Scalar peak = w.samples.abs().maxCoeff();
  if (peak == Scalar(0)) {
    out.samples.resize(0);
    return out;
  }
  const double thr = static_cast<double>(peak) * std::pow(10.0, threshold_db / 20.0);

  Vec<Scalar> kept(n);
  Index kept_n = 0;
  for (Index start = 0; start < n; start += frame_len) {
    const Index len = std::min(frame_len, n - start);
    const double rms = std::sqrt(
        w.samples.segment(start, len).template cast<double>().square().mean());
    if (rms >= thr) {
      kept.segment(kept_n, len) = w.samples.segment(start, len);
      kept_n += len;
    }
  }
  out.samples = kept.head(kept_n);
  return out;
}

inline constexpr double kSiSdrClampDb = 60.0;

// Scale-invariant SDR in dB; both signals are zero-meaned first and the
// result is clamped to +-clamp_db so a perfect reconstruction stays finite.
template <typename Scalar>
double si_sdr(const Vec<Scalar>& estimate, const Vec<Scalar>& reference,
              double clamp_db = kSiSdrClampDb) {
  if (estimate.size() != reference.size())
    throw ShapeMismatch("si_sdr: estimate and reference lengths differ");
  if (reference.size() < 2)
    throw InputTooShort("si_sdr: need at least 2 samples");

  VecD ref = reference.template cast<double>();
  VecD est = estimate.template cast<double>();
  ref -= ref.mean();
  est -= est.mean();

  const double ref_peak = reference.template cast<double>().abs().maxCoeff();
  const double zm_peak = ref.abs().maxCoeff();
  if (zm_peak <= 8.0 * std::numeric_limits<double>::epsilon() * ref_peak || zm_peak == 0.0)
    throw DegenerateReference("si_sdr: reference is constant (zero after zero-meaning)");

  const double ref_energy = ref.square().sum();
  const double alpha = (est * ref).sum() / ref_energy;
  const double target_energy = alpha * alpha * ref_energy;
  const double err_energy = (alpha * ref - est).square().sum();

  if (err_energy == 0.0) return clamp_db;
  if (target_energy == 0.0) return -clamp_db;
  const double v = 10.0 * std::log10(target_energy / err_energy);
  return std::clamp(v, -clamp_db, clamp_db);
}

template <typename Scalar>
double si_sdr(const Waveform<Scalar>& estimate, const Waveform<Scalar>& reference,
              double clamp_db = kSiSdrClampDb) {
  return si_sdr(estimate.samples, reference.samples, clamp_db);
}

}  // namespace tse

#endif  // TSE_DSP_HPP
