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

#include "tse/bank.hpp"

#include <cmath>

#include "tse/rng.hpp"

namespace tse {

namespace {

void apply_envelope(VecF& x, int sample_rate) {
  const Index attack = sample_rate / 100;  // 10 ms
  const Index release = sample_rate / 50;  // 20 ms
  const Index n = x.size();
  for (Index i = 0; i < std::min(attack, n); ++i)
    x[i] *= static_cast<float>(i + 1) / attack;
  for (Index i = 0; i < std::min(release, n); ++i)
    x[n - 1 - i] *= static_cast<float>(i + 1) / release;
}

void normalize_peak(VecF& x, float peak) {
  const float m = x.abs().maxCoeff();
  if (m > 0) x *= peak / m;
}

VecF render_clip(int class_id, RngStream& rng, int sr) {
  const double dur = rng.uniform(0.8, 4.0);
  const Index n = static_cast<Index>(std::llround(dur * sr));
  const float amp = static_cast<float>(rng.uniform(0.25, 0.9));
  VecF x(n);

  switch (class_id) {
    case 0: {  // pure tone
      const double f = rng.uniform(250.0, 450.0), ph = rng.uniform(0.0, 2 * M_PI);
      for (Index i = 0; i < n; ++i)
        x[i] = static_cast<float>(std::sin(2 * M_PI * f * i / sr + ph));
      break;
    }
    case 1: {  // harmonic stack
      const double f = rng.uniform(100.0, 200.0);
      double ph[5];
      for (auto& p : ph) p = rng.uniform(0.0, 2 * M_PI);
      for (Index i = 0; i < n; ++i) {
        double v = 0.0;
        for (int h = 1; h <= 5; ++h)
          v += std::sin(2 * M_PI * h * f * i / sr + ph[h - 1]) / h;
        x[i] = static_cast<float>(v);
      }
      break;
    }
    case 2:
    case 3: {  // up / down chirp
      double f0 = 500.0, f1 = rng.uniform(2500.0, 3500.0);
      if (class_id == 3) std::swap(f0, f1);
      const double ph = rng.uniform(0.0, 2 * M_PI);
      for (Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sr;
        x[i] = static_cast<float>(
            std::sin(2 * M_PI * (f0 * t + 0.5 * (f1 - f0) / dur * t * t) + ph));
      }
      break;
    }
    case 4: {  // broadband burst
      for (Index i = 0; i < n; ++i) x[i] = static_cast<float>(rng.normal());
      break;
    }
    case 5: {  // narrowband noise high in the spectrum
      const double fc = rng.uniform(4500.0, 6000.0);
      double lp = 0.0;
      const double a = 0.98;
      for (Index i = 0; i < n; ++i) {
        lp = a * lp + (1.0 - a) * rng.normal();
        x[i] = static_cast<float>(lp * std::sin(2 * M_PI * fc * i / sr));
      }
      break;
    }
    case 6: {  // AM tone
      const double fc = rng.uniform(800.0, 1500.0), fm = rng.uniform(4.0, 8.0);
      const double ph = rng.uniform(0.0, 2 * M_PI);
      for (Index i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / sr;
        const double env = 0.6 + 0.4 * std::sin(2 * M_PI * fm * t);
        x[i] = static_cast<float>(env * std::sin(2 * M_PI * fc * t + ph));
      }
      break;
    }
    default: {  // click train
      x.setZero();
      const double rate = rng.uniform(8.0, 15.0);
      const Index step = static_cast<Index>(sr / rate);
      const Index click = sr / 250;  // 4 ms
      for (Index p = step / 4; p + click < n; p += step)
        for (Index i = 0; i < click; ++i)
          x[p + i] = static_cast<float>(rng.normal() * std::exp(-3.0 * i / click));
      break;
    }
  }

  normalize_peak(x, amp);
  apply_envelope(x, sr);
  return x;
}

}  // namespace

SoundBank make_toy_foreground_bank(int clips_per_class, std::uint64_t seed,
                                   int sample_rate) {
  SoundBank bank;
  bank.num_classes = kToyNumClasses;
  for (int c = 0; c < kToyNumClasses; ++c) {
    for (int k = 0; k < clips_per_class; ++k) {
      RngStream rng(seed, "bank.fg", static_cast<std::uint64_t>(c) * 100000 + k);
      AudioClip clip;
      clip.class_id = c;
      clip.clip_id = "cls" + std::to_string(c) + "_clip" + std::to_string(k);
      clip.audio = WaveformF{render_clip(c, rng, sample_rate), sample_rate};
      bank.clips.push_back(std::move(clip));
    }
  }
  return bank;
}

std::vector<AudioClip> make_toy_background_bank(int n, std::uint64_t seed,
                                                double seconds, int sample_rate) {
  std::vector<AudioClip> out;
  const Index len = static_cast<Index>(std::llround(seconds * sample_rate));
  for (int k = 0; k < n; ++k) {
    RngStream rng(seed, "bank.bg", static_cast<std::uint64_t>(k));
    VecF x(len);
    double lp = 0.0;
    const double a = 0.9;
    const double level = rng.uniform(0.05, 0.12);
    for (Index i = 0; i < len; ++i) {
      lp = a * lp + (1.0 - a) * rng.normal();
      x[i] = static_cast<float>(lp + 0.25 * rng.normal());
    }
    const double rms = std::sqrt(x.cast<double>().square().mean());
    x *= static_cast<float>(level / rms);
    AudioClip clip;
    clip.class_id = -1;
    clip.clip_id = "bg_" + std::to_string(k);
    clip.audio = WaveformF{std::move(x), sample_rate};
    out.push_back(std::move(clip));
  }
  return out;
}

}  // namespace tse
