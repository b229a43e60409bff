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

#ifndef TSE_TRACK_HPP
#define TSE_TRACK_HPP

#include <algorithm>

#include "tse/common.hpp"

namespace tse {

// Per-frame activity probabilities, the detector's output and the
// extractor's timestamp conditioning.
struct DetectionTrack {
  VecF scores;              // each in [0, 1]
  double frame_rate = 0.0;  // frames per second

  Index size() const { return scores.size(); }
};

// Linear interpolation over frame positions onto target_frames points,
// endpoints aligned; values clipped back into [0, 1].
inline DetectionTrack resample_track(const DetectionTrack& d, Index target_frames) {
  if (d.size() < 1) throw ShapeMismatch("resample_track: empty track");
  if (target_frames < 1) throw ShapeMismatch("resample_track: empty target");
  DetectionTrack out;
  out.frame_rate = d.frame_rate * static_cast<double>(target_frames) / d.size();
  if (target_frames == d.size()) {
    out.scores = d.scores;
    out.frame_rate = d.frame_rate;
    return out;
  }
  out.scores.resize(target_frames);
  const Index n = d.size();
  for (Index j = 0; j < target_frames; ++j) {
    const double x = (target_frames == 1)
                         ? 0.5 * static_cast<double>(n - 1)
                         : static_cast<double>(j) * (n - 1) / (target_frames - 1);
    const Index lo = std::min<Index>(static_cast<Index>(x), n - 1);
    const Index hi = std::min<Index>(lo + 1, n - 1);
    const double frac = x - static_cast<double>(lo);
    const double v = (1.0 - frac) * d.scores[lo] + frac * d.scores[hi];
    out.scores[j] = static_cast<float>(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

}  // namespace tse

#endif  // TSE_TRACK_HPP
