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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "tse/dsp.hpp"
#include "tse/rng.hpp"

using namespace tse;

namespace {

WaveformD random_waveform(Index n, RngStream& rng, int sr = 16000) {
  WaveformD w;
  w.sample_rate = sr;
  w.samples.resize(n);
  for (Index i = 0; i < n; ++i) w.samples[i] = rng.normal();
  return w;
}

double rel_l2(const VecD& a, const VecD& b) {
  return std::sqrt((a - b).square().sum() / b.square().sum());
}

}  // namespace

TEST_CASE("stft of silence is all-zero") {
  WaveformD w;
  w.samples = VecD::Zero(16000);
  auto s = stft(w, FrameSpec{});
  CHECK(s.bins.cwiseAbs().maxCoeff() == 0.0);
  CHECK(s.num_bins() == 257);
  CHECK(s.num_frames() == 1 + 16000 / 128);
}

TEST_CASE("stft matches a direct DFT oracle on one frame") {
  RngStream rng(7, "dsp.dft");
  FrameSpec spec;
  spec.window_size = 64;
  spec.hop_size = 16;
  WaveformD w = random_waveform(400, rng);
  auto s = stft(w, spec);

  // Restate the framing convention independently: frame t starts at
  // t*hop - window/2 of the original signal, reflect-padded.
  const Index t = 5;
  auto window = make_window<double>(WindowFn::kHann, spec.window_size);
  std::vector<double> frame(spec.window_size);
  for (int i = 0; i < spec.window_size; ++i) {
    const Index j = oracle::reflect(t * spec.hop_size - spec.window_size / 2 + i, w.size());
    frame[i] = w.samples[j] * window[i];
  }
  auto ref = oracle::dft_half(frame);
  for (int k = 0; k < spec.num_bins(); ++k) {
    CHECK(std::abs(s.bins(k, t) - ref[k]) < 1e-9);
  }
}

TEST_CASE("bin-centered sinusoid concentrates frame energy in its bin") {
  FrameSpec spec;
  spec.window_fn = WindowFn::kRect;
  const int sr = 16000;
  const int k = 32;  // 1 kHz = 32 * 16000 / 512
  const double f = static_cast<double>(k) * sr / spec.window_size;
  WaveformD w;
  w.sample_rate = sr;
  w.samples.resize(sr);
  for (Index i = 0; i < w.size(); ++i)
    w.samples[i] = std::sin(2.0 * M_PI * f * i / sr);
  auto s = stft(w, spec);

  // Interior frames only (no reflect-padding content inside the window).
  const Index first = spec.window_size / 2 / spec.hop_size + 1;
  const Index last = (w.size() - spec.window_size / 2) / spec.hop_size - 1;
  for (Index t = first; t <= last; ++t) {
    const double total = s.bins.col(t).squaredNorm();
    const double at_bin = std::norm(s.bins(k, t));
    CHECK(at_bin / total >= 0.99);
  }
}

TEST_CASE("istft(stft(x)) reconstructs x") {
  RngStream rng(11, "dsp.roundtrip");
  for (Index n : {2048, 2500, 5000, 512}) {
    WaveformD w = random_waveform(n, rng);
    auto s = stft(w, FrameSpec{});
    auto y = istft(s, n);
    CHECK(rel_l2(y.samples, w.samples) < 1e-6);
  }
  // A second geometry.
  FrameSpec spec;
  spec.window_size = 256;
  spec.hop_size = 64;
  WaveformD w = random_waveform(3001, rng);
  auto y = istft(stft(w, spec), w.size());
  CHECK(rel_l2(y.samples, w.samples) < 1e-6);
}

TEST_CASE("istft of a zero spectrogram is silence, padded to out_len") {
  Spectrogram<double> s;
  s.frame_spec = FrameSpec{};
  s.bins = CMat<double>::Zero(257, 40);
  auto y = istft(s, 6000);
  CHECK(y.size() == 6000);
  CHECK(y.samples.abs().maxCoeff() == 0.0);
}

TEST_CASE("single-frame istft equals the frame contents over the synthesis window") {
  // One frame holding DFT(window .* v) must come back as v wherever the
  // window is nonzero; the trimmed output exposes v on [win/2, win/2+out).
  FrameSpec spec;
  spec.window_size = 64;
  spec.hop_size = 16;
  RngStream rng(3, "dsp.oneframe");
  auto window = make_window<double>(WindowFn::kHann, spec.window_size);
  std::vector<double> v(spec.window_size);
  for (auto& x : v) x = rng.normal();
  std::vector<double> frame(spec.window_size);
  for (int i = 0; i < spec.window_size; ++i) frame[i] = window[i] * v[i];
  auto bins = oracle::dft_half(frame);

  Spectrogram<double> s;
  s.frame_spec = spec;
  s.bins.resize(spec.num_bins(), 1);
  for (int k = 0; k < spec.num_bins(); ++k) s.bins(k, 0) = bins[k];

  const Index out_len = spec.window_size / 2;
  auto y = istft(s, out_len);
  for (Index i = 0; i < out_len; ++i)
    CHECK(y.samples[i] == doctest::Approx(v[i + spec.window_size / 2]).epsilon(1e-9));
}

TEST_CASE("istft rejects inconsistent bin counts") {
  Spectrogram<double> s;
  s.frame_spec = FrameSpec{};
  s.bins = CMat<double>::Zero(100, 10);
  CHECK_THROWS_AS(istft(s, 1000), ShapeMismatch);
}

TEST_CASE("stft rejects signals shorter than one window") {
  WaveformD w;
  w.samples = VecD::Zero(100);
  CHECK_THROWS_AS(stft(w, FrameSpec{}), InputTooShort);
}

TEST_CASE("FrameSpec validation") {
  FrameSpec bad;
  bad.window_size = 256;
  bad.hop_size = 200;  // more than half the window
  CHECK_THROWS(bad.validate());
  CHECK_NOTHROW(FrameSpec{}.validate());
}

TEST_CASE("Parseval: weighted half-spectrum energy equals windowed frame energy") {
  RngStream rng(13, "dsp.parseval");
  FrameSpec spec;
  spec.window_size = 128;
  spec.hop_size = 32;
  WaveformD w = random_waveform(1000, rng);
  auto s = stft(w, spec);
  auto window = make_window<double>(WindowFn::kHann, spec.window_size);

  for (Index t = 0; t < s.num_frames(); ++t) {
    double spectral = std::norm(s.bins(0, t)) + std::norm(s.bins(s.num_bins() - 1, t));
    for (Index k = 1; k < s.num_bins() - 1; ++k) spectral += 2.0 * std::norm(s.bins(k, t));
    spectral /= spec.window_size;

    double time_energy = 0.0;
    for (int i = 0; i < spec.window_size; ++i) {
      const Index j =
          oracle::reflect(t * spec.hop_size - spec.window_size / 2 + i, w.size());
      const double x = w.samples[j] * window[i];
      time_energy += x * x;
    }
    CHECK(std::abs(spectral - time_energy) / time_energy < 1e-6);
  }
}

TEST_CASE("stft_adjoint satisfies the adjoint identity") {
  RngStream rng(17, "dsp.adjoint");
  FrameSpec spec;
  spec.window_size = 64;
  spec.hop_size = 16;
  const Index n = 300;
  WaveformD x = random_waveform(n, rng);
  auto sx = stft(x, spec);

  CMat<double> g(sx.bins.rows(), sx.bins.cols());
  for (Index c = 0; c < g.cols(); ++c)
    for (Index r = 0; r < g.rows(); ++r) g(r, c) = {rng.normal(), rng.normal()};

  double lhs = 0.0;  // <G, stft(x)> in the (d/dRe, d/dIm) pairing
  for (Index c = 0; c < g.cols(); ++c)
    for (Index r = 0; r < g.rows(); ++r)
      lhs += g(r, c).real() * sx.bins(r, c).real() + g(r, c).imag() * sx.bins(r, c).imag();

  const VecD back = stft_adjoint<double>(g, spec, n);
  const double rhs = (back * x.samples).sum();
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-10);
}

TEST_CASE("resample at the same rate is the identity") {
  RngStream rng(19, "dsp.resample");
  WaveformD w = random_waveform(500, rng);
  auto y = resample(w, w.sample_rate);
  CHECK((y.samples == w.samples).all());
}

TEST_CASE("resample preserves a DC constant") {
  WaveformD w;
  w.sample_rate = 48000;
  w.samples = VecD::Constant(4800, 0.37);
  auto y = resample(w, 16000);
  CHECK(y.size() == 1600);
  for (Index i = 0; i < y.size(); ++i)
    CHECK(y.samples[i] == doctest::Approx(0.37).epsilon(1e-9));
}

TEST_CASE("downsampling a 1 kHz sine from 32 kHz to 16 kHz keeps the tone") {
  WaveformD w;
  w.sample_rate = 32000;
  const Index n = 6400;  // 0.2 s
  w.samples.resize(n);
  for (Index i = 0; i < n; ++i)
    w.samples[i] = std::sin(2.0 * M_PI * 1000.0 * i / 32000.0);
  auto y = resample(w, 16000);
  CHECK(y.size() == 3200);
  // Interior comparison against the analytic sine at the new rate.
  for (Index i = 200; i < y.size() - 200; ++i) {
    const double want = std::sin(2.0 * M_PI * 1000.0 * i / 16000.0);
    CHECK(std::abs(y.samples[i] - want) < 0.01);
  }
}

TEST_CASE("trim_silence removes digital-silence head and tail") {
  WaveformD w;
  w.sample_rate = 16000;
  w.samples = VecD::Zero(1200);
  for (Index i = 400; i < 800; ++i) w.samples[i] = std::sin(0.13 * i);
  auto y = trim_silence(w, -45.0, 25.0);  // 400-sample frames
  CHECK(y.size() == 400);
  CHECK((y.samples == w.samples.segment(400, 400)).all());
}

TEST_CASE("trim_silence leaves an all-loud clip unchanged") {
  RngStream rng(23, "dsp.trim");
  WaveformD w = random_waveform(999, rng);
  auto y = trim_silence(w);
  CHECK(y.size() == w.size());
  CHECK((y.samples == w.samples).all());
}

TEST_CASE("trim_silence matches a per-frame RMS oracle and is idempotent") {
  RngStream rng(29, "dsp.trim2");
  for (int rep = 0; rep < 10; ++rep) {
    WaveformD w;
    w.sample_rate = 16000;
    const Index frame = 400;
    const int n_frames = 8;
    w.samples.resize(frame * n_frames + 123);  // ragged tail frame
    for (Index i = 0; i < w.size(); ++i) w.samples[i] = 0.5 * rng.normal();
    // Scale some frames down so they fall under the gate.
    std::vector<bool> quiet(n_frames + 1, false);
    for (int fidx = 0; fidx <= n_frames; ++fidx)
      if (rng.uniform() < 0.4) {
        quiet[fidx] = true;
        const Index start = fidx * frame;
        const Index len = std::min<Index>(frame, w.size() - start);
        w.samples.segment(start, len) *= 1e-4;
      }

    auto y = trim_silence(w, -45.0, 25.0);

    // Oracle: recompute the kept set by explicit loops.
    double peak = 0.0;
    for (Index i = 0; i < w.size(); ++i) peak = std::max(peak, std::abs(w.samples[i]));
    const double thr = peak * std::pow(10.0, -45.0 / 20.0);
    std::vector<double> kept;
    for (Index start = 0; start < w.size(); start += frame) {
      const Index len = std::min<Index>(frame, w.size() - start);
      double acc = 0.0;
      for (Index i = start; i < start + len; ++i) acc += w.samples[i] * w.samples[i];
      if (std::sqrt(acc / len) >= thr)
        for (Index i = start; i < start + len; ++i) kept.push_back(w.samples[i]);
    }
    REQUIRE(y.size() == static_cast<Index>(kept.size()));
    for (Index i = 0; i < y.size(); ++i) CHECK(y.samples[i] == kept[i]);

    auto y2 = trim_silence(y, -45.0, 25.0);
    REQUIRE(y2.size() == y.size());
    CHECK((y2.samples == y.samples).all());
  }
}

TEST_CASE("trim_silence of a fully silent clip is empty") {
  WaveformD w;
  w.samples = VecD::Zero(5000);
  CHECK(trim_silence(w).size() == 0);
}

TEST_CASE("si_sdr hand-derived fixture") {
  VecD ref(3), est(3);
  ref << 1, 0, -1;
  est << 2, 0, 1;
  CHECK(si_sdr(est, ref) == doctest::Approx(-4.7712125472).epsilon(1e-6));
  CHECK(si_sdr(est, ref) == doctest::Approx(10.0 * std::log10(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("si_sdr clamps at perfect reconstruction and under scaling") {
  RngStream rng(31, "dsp.sisdr");
  WaveformD w = random_waveform(256, rng);
  CHECK(si_sdr(w.samples, w.samples) == kSiSdrClampDb);
  CHECK(si_sdr((3.7 * w.samples).eval(), w.samples) == kSiSdrClampDb);
}

TEST_CASE("si_sdr is invariant to positive scaling and constant shift of the estimate") {
  RngStream rng(37, "dsp.sisdr2");
  WaveformD ref = random_waveform(512, rng);
  WaveformD est = random_waveform(512, rng);
  est.samples = ref.samples + 0.3 * est.samples;
  const double base = si_sdr(est.samples, ref.samples);
  for (double c : {0.1, 1.0, 3.7, 100.0})
    CHECK(std::abs(si_sdr((c * est.samples).eval(), ref.samples) - base) < 1e-6);
  CHECK(std::abs(si_sdr((est.samples + 5.0).eval(), ref.samples) - base) < 1e-6);
}

TEST_CASE("si_sdr matches the loop oracle on random pairs") {
  RngStream rng(41, "dsp.sisdr3");
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = 64 + static_cast<Index>(rng.uniform_int(0, 200));
    std::vector<double> ref(n), est(n);
    for (auto& v : ref) v = rng.normal();
    for (auto& v : est) v = rng.normal();
    VecD r = Eigen::Map<VecD>(ref.data(), n), e = Eigen::Map<VecD>(est.data(), n);
    CHECK(si_sdr(e, r) == doctest::Approx(oracle::loop_si_sdr(est, ref)).epsilon(1e-10));
  }
}

TEST_CASE("si_sdr rejects degenerate references") {
  VecD c = VecD::Constant(100, 2.5);
  VecD e = VecD::LinSpaced(100, 0, 1);
  CHECK_THROWS_AS(si_sdr(e, c), DegenerateReference);
  VecD z = VecD::Zero(100);
  CHECK_THROWS_AS(si_sdr(e, z), DegenerateReference);
  VecD short_ref(3);
  short_ref << 1, 2, 3;
  CHECK_THROWS_AS(si_sdr(e, short_ref), ShapeMismatch);
}
