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

#ifndef TSE_REGION_HPP
#define TSE_REGION_HPP

#include <algorithm>
#include <vector>

#include "tse/dsp.hpp"

namespace tse {

struct TimeInterval {
  double onset = 0.0;   // seconds
  double offset = 0.0;  // seconds
  bool operator==(const TimeInterval&) const = default;
};

// A union of disjoint time intervals with derived sample and frame index
// sets. A sample belongs to the region when its instant lies inside an
// interval; a frame belongs when its center sample does.
class RegionMask {
 public:
  RegionMask() = default;
  explicit RegionMask(std::vector<TimeInterval> intervals, double clip_seconds)
      : intervals_(std::move(intervals)) {
    std::sort(intervals_.begin(), intervals_.end(),
              [](const TimeInterval& a, const TimeInterval& b) { return a.onset < b.onset; });
    double prev_end = 0.0;
    for (const TimeInterval& iv : intervals_) {
      if (!(iv.onset >= 0.0 && iv.onset < iv.offset && iv.offset <= clip_seconds + 1e-9))
        throw std::invalid_argument("RegionMask: interval outside [0, clip] or empty");
      if (iv.onset < prev_end - 1e-12)
        throw std::invalid_argument("RegionMask: intervals overlap");
      prev_end = iv.offset;
    }
  }

  static RegionMask full_clip(double clip_seconds) {
    return RegionMask({{0.0, clip_seconds}}, clip_seconds);
  }

  const std::vector<TimeInterval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

  bool contains(double t_seconds) const {
    for (const TimeInterval& iv : intervals_)
      if (t_seconds >= iv.onset && t_seconds < iv.offset) return true;
    return false;
  }

  // Indices of samples whose instants fall inside the region, ascending.
  std::vector<Index> sample_indices(Index n_samples, int sample_rate) const {
    std::vector<Index> out;
    for (const TimeInterval& iv : intervals_) {
      const Index first = std::max<Index>(
          0, static_cast<Index>(std::ceil(iv.onset * sample_rate - 1e-9)));
      const Index last_excl = std::min<Index>(
          n_samples, static_cast<Index>(std::ceil(iv.offset * sample_rate - 1e-9)));
      for (Index i = first; i < last_excl; ++i) out.push_back(i);
    }
    return out;
  }

  // Indices of frames whose center sample falls inside the region. The last
  // frame of the centered framing can sit one sample past the signal; its
  // center is clamped to the final sample so a full-clip mask selects every
  // frame.
  std::vector<Index> frame_indices(const FrameSpec& spec, Index n_samples,
                                   int sample_rate) const {
    std::vector<Index> out;
    const Index frames = spec.num_frames(n_samples);
    for (Index t = 0; t < frames; ++t) {
      const double center =
          std::min(spec.frame_center(t), static_cast<double>(n_samples - 1));
      if (contains(center / sample_rate)) out.push_back(t);
    }
    return out;
  }

 private:
  std::vector<TimeInterval> intervals_;
};

}  // namespace tse

#endif  // TSE_REGION_HPP
