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

#ifndef TSE_BANK_HPP
#define TSE_BANK_HPP

#include <string>
#include <vector>

#include "tse/dsp.hpp"

namespace tse {

struct AudioClip {
  WaveformF audio;
  int class_id = 0;
  std::string clip_id;
};

struct SoundBank {
  std::vector<AudioClip> clips;
  int num_classes = 0;

  std::vector<Index> clip_indices_of(int class_id) const {
    std::vector<Index> out;
    for (Index i = 0; i < static_cast<Index>(clips.size()); ++i)
      if (clips[i].class_id == class_id) out.push_back(i);
    return out;
  }
};

inline constexpr int kToyNumClasses = 8;

// Synthetic foreground bank with class-distinct timbres: pure tone,
// harmonic stack, up/down chirps, broadband burst, high narrowband noise,
// AM tone, click train. Clip durations and parameters are drawn from the
// seed; every clip is fully reproducible from (seed, class, index).
SoundBank make_toy_foreground_bank(int clips_per_class, std::uint64_t seed,
                                   int sample_rate = 16000);

// Low-level noise scenes, exactly `seconds` long each.
std::vector<AudioClip> make_toy_background_bank(int n, std::uint64_t seed,
                                                double seconds = 10.0,
                                                int sample_rate = 16000);

}  // namespace tse

#endif  // TSE_BANK_HPP
