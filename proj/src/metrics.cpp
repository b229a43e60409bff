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

#include "tse/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace tse {

double si_sdri(const WaveformF& mixture, const WaveformF& estimate,
               const WaveformF& target) {
  return si_sdr(estimate, target) - si_sdr(mixture, target);
}

double si_sdri_t(const WaveformF& mixture, const WaveformF& estimate,
                 const WaveformF& target, const std::vector<EventAnnotation>& events) {
  if (events.empty()) throw EmptyRegion("si_sdri_t: no events");
  std::vector<TimeInterval> ivs;
  for (const EventAnnotation& e : events) ivs.push_back({e.onset, e.offset});
  const double clip_s = target.duration_seconds();
  RegionMask mask(std::move(ivs), clip_s);
  const std::vector<Index> idx = mask.sample_indices(target.size(), target.sample_rate);
  if (idx.size() < 2) throw EmptyRegion("si_sdri_t: region selects fewer than 2 samples");

  VecF m(static_cast<Index>(idx.size())), e(static_cast<Index>(idx.size())),
      t(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    m[static_cast<Index>(i)] = mixture.samples[idx[i]];
    e[static_cast<Index>(i)] = estimate.samples[idx[i]];
    t[static_cast<Index>(i)] = target.samples[idx[i]];
  }
  return si_sdr(e, t) - si_sdr(m, t);
}

std::vector<EventAnnotation> binarize(const DetectionTrack& track,
                                      const BinarizeConfig& cfg) {
  if (track.frame_rate <= 0.0)
    throw std::invalid_argument("binarize: track has no frame rate");
  const Index n = track.size();
  const int half = cfg.median_window / 2;

  VecF filtered(n);
  std::vector<float> window;
  for (Index i = 0; i < n; ++i) {
    window.clear();
    for (Index j = std::max<Index>(0, i - half); j <= std::min<Index>(n - 1, i + half); ++j)
      window.push_back(track.scores[j]);
    std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
    filtered[i] = window[window.size() / 2];
  }

  std::vector<EventAnnotation> events;
  Index start = -1;
  for (Index i = 0; i <= n; ++i) {
    const bool active = i < n && filtered[i] >= cfg.threshold;
    if (active && start < 0) start = i;
    if (!active && start >= 0) {
      events.push_back({static_cast<double>(start) / track.frame_rate,
                        static_cast<double>(i) / track.frame_rate, 0});
      start = -1;
    }
  }
  return events;
}

namespace {

bool overlaps(const std::vector<EventAnnotation>& evs, double lo, double hi) {
  for (const EventAnnotation& e : evs)
    if (std::min(e.offset, hi) - std::max(e.onset, lo) > 0.0) return true;
  return false;
}

}  // namespace

F1Counts segment_f1(const std::vector<EventAnnotation>& pred,
                    const std::vector<EventAnnotation>& gt, double clip_len,
                    double segment_s) {
  F1Counts c;
  const long n_seg = static_cast<long>(std::ceil(clip_len / segment_s - 1e-12));
  for (long s = 0; s < n_seg; ++s) {
    const double lo = s * segment_s;
    const double hi = std::min(clip_len, (s + 1) * segment_s);
    const bool p = overlaps(pred, lo, hi);
    const bool g = overlaps(gt, lo, hi);
    if (p && g) ++c.tp;
    else if (p) ++c.fp;
    else if (g) ++c.fn;
  }
  return c;
}

F1Counts event_f1(const std::vector<EventAnnotation>& pred,
                  const std::vector<EventAnnotation>& gt, double onset_collar,
                  double offset_frac) {
  std::vector<const EventAnnotation*> ps, gs;
  for (const EventAnnotation& e : pred) ps.push_back(&e);
  for (const EventAnnotation& e : gt) gs.push_back(&e);
  auto by_onset = [](const EventAnnotation* a, const EventAnnotation* b) {
    return a->onset < b->onset;
  };
  std::sort(ps.begin(), ps.end(), by_onset);
  std::sort(gs.begin(), gs.end(), by_onset);

  std::vector<bool> taken(gs.size(), false);
  long matched = 0;
  for (const EventAnnotation* p : ps) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (taken[j]) continue;
      const double dur = gs[j]->offset - gs[j]->onset;
      const double off_tol = std::max(onset_collar, offset_frac * dur);
      if (std::abs(p->onset - gs[j]->onset) <= onset_collar &&
          std::abs(p->offset - gs[j]->offset) <= off_tol) {
        taken[j] = true;
        ++matched;
        break;
      }
    }
  }
  F1Counts c;
  c.tp = matched;
  c.fp = static_cast<long>(ps.size()) - matched;
  c.fn = static_cast<long>(gs.size()) - matched;
  return c;
}

}  // namespace tse
