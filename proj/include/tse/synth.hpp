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

#ifndef TSE_SYNTH_HPP
#define TSE_SYNTH_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tse/bank.hpp"
#include "tse/rng.hpp"
#include "tse/wav.hpp"

namespace tse {

struct EventAnnotation {
  double onset = 0.0;   // seconds
  double offset = 0.0;  // seconds
  int class_id = 0;
  bool operator==(const EventAnnotation&) const = default;
};

struct InterferenceMeta {
  int class_id = 0;
  double snr_db = 0.0;
  double onset = 0.0;  // seconds
  bool operator==(const InterferenceMeta&) const = default;
};

struct SynthConfig {
  double clip_seconds = 10.0;
  int sample_rate = 16000;
  double snr_min_db = -5.0;
  double snr_max_db = 10.0;
  int min_interference = 1;
  int max_interference = 3;
  double reference_seconds = 10.0;
  double trim_threshold_db = -45.0;
  double trim_frame_ms = 25.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (clip_seconds <= 0 || sample_rate <= 0 || reference_seconds <= 0)
      throw ConfigError("SynthConfig: nonpositive duration or rate");
    if (snr_min_db > snr_max_db || min_interference > max_interference ||
        min_interference < 0)
      throw ConfigError("SynthConfig: empty snr or interference range");
  }
  Index clip_samples() const {
    return static_cast<Index>(std::llround(clip_seconds * sample_rate));
  }
};

struct MixtureExample {
  std::string id;
  WaveformF mixture;  // background + target + interferences, sample-exact
  WaveformF target;   // isolated, gain-scaled target contribution
  AudioClip reference;
  std::vector<EventAnnotation> target_events;
  std::vector<InterferenceMeta> interference_meta;
  std::string background_id;
  int target_class = 0;
  std::string target_clip_id;
  double target_snr_db = 0.0;
  std::uint64_t example_index = 0;

  // Synthesis byproducts kept for integrity checks; not persisted.
  WaveformF background;
  std::vector<WaveformF> interference_audio;
  std::vector<std::pair<Index, Index>> interference_spans;  // [onset, onset+len)
};

// Gain g so that 10*log10(||g*fg||^2 / ||bg_region||^2) equals snr_db.
// Both segments are taken over the foreground's active interval.
double scale_to_snr(const VecF& fg, const VecF& bg_region, double snr_db);

// Uniform draw of another clip of the same class, normalized (zero-padded or
// cut) to `seconds`.
AudioClip select_reference(const SoundBank& bank, int class_id,
                           const std::string& exclude_clip_id, double seconds,
                           RngStream& rng);

// Fully deterministic in (cfg.seed, example_index).
MixtureExample synthesize_example(const SoundBank& fg_bank,
                                  const std::vector<AudioClip>& bg_bank,
                                  const SynthConfig& cfg,
                                  std::uint64_t example_index);

// ---------------------------------------------------------------------------
// Manifest persistence (JSON-Lines, paths relative to the manifest file).

struct ManifestRecord {
  std::string id;
  std::string mixture_path;
  std::string target_path;
  std::string reference_path;
  int class_id = 0;
  std::vector<EventAnnotation> events;
  std::vector<InterferenceMeta> interferences;
  std::string background_id;
  std::uint64_t seed = 0;
  bool operator==(const ManifestRecord&) const = default;
};

struct Manifest {
  std::filesystem::path base_dir;
  std::vector<ManifestRecord> records;
  Index size() const { return static_cast<Index>(records.size()); }
};

Manifest build_dataset(const SoundBank& fg_bank, const std::vector<AudioClip>& bg_bank,
                       const SynthConfig& cfg, int n_examples,
                       const std::filesystem::path& out_dir,
                       WavFormat format = WavFormat::kFloat32);

void save_manifest(const Manifest& m, const std::filesystem::path& path);
Manifest load_manifest(const std::filesystem::path& path);

// Reads the audio referenced by record i (events and metadata included;
// synthesis byproducts stay empty).
MixtureExample load_example(const Manifest& m, Index i);

}  // namespace tse

#endif  // TSE_SYNTH_HPP
