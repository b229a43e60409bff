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

#include "tse/synth.hpp"

#include <cmath>

namespace tse {

double scale_to_snr(const VecF& fg, const VecF& bg_region, double snr_db) {
  if (fg.size() != bg_region.size())
    throw ShapeMismatch("scale_to_snr: segment lengths differ");
  const double p_fg = fg.cast<double>().square().sum();
  const double p_bg = bg_region.cast<double>().square().sum();
  if (p_fg <= 0.0)
    throw DegenerateForeground("scale_to_snr: foreground has zero power");
  if (p_bg <= 0.0)
    throw std::invalid_argument("scale_to_snr: background region has zero power");
  return std::sqrt(std::pow(10.0, snr_db / 10.0) * p_bg / p_fg);
}

AudioClip select_reference(const SoundBank& bank, int class_id,
                           const std::string& exclude_clip_id, double seconds,
                           RngStream& rng) {
  std::vector<Index> candidates;
  for (Index i : bank.clip_indices_of(class_id))
    if (bank.clips[i].clip_id != exclude_clip_id) candidates.push_back(i);
  if (candidates.empty())
    throw BankTooSmall("select_reference: class " + std::to_string(class_id) +
                       " has no clip other than " + exclude_clip_id);

  const Index pick = candidates[rng.uniform_int(0, static_cast<int>(candidates.size()) - 1)];
  AudioClip out = bank.clips[pick];
  const Index want = static_cast<Index>(std::llround(seconds * out.audio.sample_rate));
  VecF samples = VecF::Zero(want);
  const Index n = std::min(want, out.audio.size());
  samples.head(n) = out.audio.samples.head(n);
  out.audio.samples = std::move(samples);
  return out;
}

namespace {

struct PlacedForeground {
  VecF scaled;       // gain-applied, trimmed, truncated
  Index onset = 0;   // samples
  double snr_db = 0.0;
  Index bank_index = 0;
};

// Draw a clip of the given class, gate out silence, truncate, place and
// scale it. Draws happen in a fixed order so the example stream is stable.
PlacedForeground place_foreground(const SoundBank& bank, const std::vector<Index>& pool,
                                  const VecF& background, const SynthConfig& cfg,
                                  RngStream& rng) {
  const Index clip_len = cfg.clip_samples();
  for (int attempt = 0; attempt < 64; ++attempt) {
    const Index pick = pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
    WaveformF trimmed = trim_silence(bank.clips[pick].audio, cfg.trim_threshold_db,
                                     cfg.trim_frame_ms);
    if (trimmed.size() == 0) continue;  // fully silent clip: redraw
    if (trimmed.size() > clip_len)
      trimmed.samples = trimmed.samples.head(clip_len).eval();

    PlacedForeground out;
    out.bank_index = pick;
    out.onset = rng.uniform_int(0, static_cast<int>(clip_len - trimmed.size()));
    out.snr_db = rng.uniform(cfg.snr_min_db, cfg.snr_max_db);
    const double gain =
        scale_to_snr(trimmed.samples, background.segment(out.onset, trimmed.size()),
                     out.snr_db);
    out.scaled = (gain * trimmed.samples.cast<double>()).cast<float>();
    return out;
  }
  throw BankTooSmall("place_foreground: no usable (non-silent) clip found");
}

}  // namespace

MixtureExample synthesize_example(const SoundBank& fg_bank,
                                  const std::vector<AudioClip>& bg_bank,
                                  const SynthConfig& cfg, std::uint64_t example_index) {
  cfg.validate();
  if (fg_bank.num_classes < 2)
    throw BankTooSmall("synthesize_example: need at least 2 classes");
  if (bg_bank.empty()) throw BankTooSmall("synthesize_example: background bank empty");

  RngStream rng(cfg.seed, "synth", example_index);
  const Index clip_len = cfg.clip_samples();

  MixtureExample ex;
  ex.example_index = example_index;
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "ex%05llu",
                  static_cast<unsigned long long>(example_index));
    ex.id = buf;
  }

  // Background at unit gain.
  const AudioClip& bg = bg_bank[rng.uniform_int(0, static_cast<int>(bg_bank.size()) - 1)];
  if (bg.audio.size() < clip_len)
    throw InputTooShort("synthesize_example: background shorter than the clip");
  ex.background_id = bg.clip_id;
  ex.background = WaveformF{bg.audio.samples.head(clip_len).eval(), cfg.sample_rate};

  // Target.
  ex.target_class = rng.uniform_int(0, fg_bank.num_classes - 1);
  const std::vector<Index> target_pool = fg_bank.clip_indices_of(ex.target_class);
  if (target_pool.size() < 2)
    throw BankTooSmall("synthesize_example: class " + std::to_string(ex.target_class) +
                       " needs at least 2 clips (target + reference)");
  const PlacedForeground tgt =
      place_foreground(fg_bank, target_pool, ex.background.samples, cfg, rng);
  ex.target_clip_id = fg_bank.clips[tgt.bank_index].clip_id;
  ex.target_snr_db = tgt.snr_db;
  VecF target_full = VecF::Zero(clip_len);
  target_full.segment(tgt.onset, tgt.scaled.size()) = tgt.scaled;
  ex.target = WaveformF{std::move(target_full), cfg.sample_rate};
  ex.target_events.push_back(
      {static_cast<double>(tgt.onset) / cfg.sample_rate,
       static_cast<double>(tgt.onset + tgt.scaled.size()) / cfg.sample_rate,
       ex.target_class});

  // Interferences, classes drawn excluding the target class.
  std::vector<int> other_classes;
  for (int c = 0; c < fg_bank.num_classes; ++c)
    if (c != ex.target_class && !fg_bank.clip_indices_of(c).empty())
      other_classes.push_back(c);
  if (other_classes.empty())
    throw BankTooSmall("synthesize_example: no interference class available");

  const int n_interf = rng.uniform_int(cfg.min_interference, cfg.max_interference);
  VecF mixture = ex.background.samples + ex.target.samples;
  for (int k = 0; k < n_interf; ++k) {
    const int cls = other_classes[rng.uniform_int(0, static_cast<int>(other_classes.size()) - 1)];
    const PlacedForeground pf = place_foreground(
        fg_bank, fg_bank.clip_indices_of(cls), ex.background.samples, cfg, rng);
    VecF full = VecF::Zero(clip_len);
    full.segment(pf.onset, pf.scaled.size()) = pf.scaled;
    mixture += full;
    ex.interference_audio.push_back(WaveformF{std::move(full), cfg.sample_rate});
    ex.interference_spans.emplace_back(pf.onset, pf.onset + pf.scaled.size());
    ex.interference_meta.push_back(
        {cls, pf.snr_db, static_cast<double>(pf.onset) / cfg.sample_rate});
  }
  ex.mixture = WaveformF{std::move(mixture), cfg.sample_rate};

  ex.reference = select_reference(fg_bank, ex.target_class, ex.target_clip_id,
                                  cfg.reference_seconds, rng);
  return ex;
}

}  // namespace tse
