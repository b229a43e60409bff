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

#ifndef TSE_METRICS_HPP
#define TSE_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "tse/region.hpp"
#include "tse/synth.hpp"
#include "tse/track.hpp"

namespace tse {

// SI-SDR improvement of the estimate over the unprocessed mixture.
double si_sdri(const WaveformF& mixture, const WaveformF& estimate,
               const WaveformF& target);

// SI-SDR improvement restricted to the target-active regions: the samples
// inside the event intervals are concatenated (in order) for all three
// signals before the improvement is computed.
double si_sdri_t(const WaveformF& mixture, const WaveformF& estimate,
                 const WaveformF& target, const std::vector<EventAnnotation>& events);

struct BinarizeConfig {
  double threshold = 0.5;
  int median_window = 5;  // frames, odd
};

// Median-filter, threshold, and merge runs of positive frames into events.
std::vector<EventAnnotation> binarize(const DetectionTrack& track,
                                      const BinarizeConfig& cfg = {});

struct F1Counts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
  double f1() const {
    const double den = 2.0 * tp + fp + fn;
    return den == 0.0 ? 1.0 : 2.0 * tp / den;
  }
  F1Counts& operator+=(const F1Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

// Fixed one-second (by default) segments; a segment is positive when it has
// positive-length overlap with any event.
F1Counts segment_f1(const std::vector<EventAnnotation>& pred,
                    const std::vector<EventAnnotation>& gt, double clip_len,
                    double segment_s = 1.0);

// Greedy one-to-one matching in onset order; a pair matches when the onset
// difference is within the collar and the offset difference within
// max(collar, offset_frac * gt duration).
F1Counts event_f1(const std::vector<EventAnnotation>& pred,
                  const std::vector<EventAnnotation>& gt, double onset_collar = 0.2,
                  double offset_frac = 0.2);

}  // namespace tse

#endif  // TSE_METRICS_HPP
