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

#include <vector>

#include "oracles.hpp"
#include "tse/losses.hpp"
#include "tse/rng.hpp"

using namespace tse;

namespace {

constexpr int kSr = 16000;

VecD random_vec(Index n, RngStream& rng) {
  VecD v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal();
  return v;
}

double grad_rel_error(const VecD& analytic, const std::vector<double>& fd) {
  double num = 0.0, den = 0.0;
  for (Index i = 0; i < analytic.size(); ++i) {
    num = std::max(num, std::abs(analytic[i] - fd[static_cast<std::size_t>(i)]));
    den = std::max(den, std::abs(analytic[i]));
  }
  return num / std::max(den, 1e-8);
}

}  // namespace

TEST_CASE("time_mse gradient vs central differences") {
  RngStream rng(21, "grad.tmse");
  for (int rep = 0; rep < 5; ++rep) {
    const Index n = 40;
    VecD y = random_vec(n, rng), yh = random_vec(n, rng);
    auto f = [&](const std::vector<double>& x) {
      VecD v = Eigen::Map<const VecD>(x.data(), n);
      return time_mse(v, y);
    };
    auto fd = oracle::central_diff(f, {yh.data(), yh.data() + n});
    CHECK(grad_rel_error(time_mse_grad(yh, y), fd) < 1e-6);
  }
}

TEST_CASE("sisdr_loss gradient vs central differences") {
  RngStream rng(22, "grad.sisdr");
  for (int rep = 0; rep < 5; ++rep) {
    const Index n = 48;
    VecD y = random_vec(n, rng), yh = random_vec(n, rng);
    auto f = [&](const std::vector<double>& x) {
      VecD v = Eigen::Map<const VecD>(x.data(), n);
      return static_cast<double>(sisdr_loss(v, y));
    };
    auto fd = oracle::central_diff(f, {yh.data(), yh.data() + n});
    CHECK(grad_rel_error(sisdr_loss_grad(yh, y), fd) < 1e-4);
  }
}

TEST_CASE("freq_mse gradient wrt complex bins vs central differences") {
  RngStream rng(23, "grad.fmse");
  for (int rep = 0; rep < 5; ++rep) {
    const Index bins = 9, frames = 6;
    Spectrogram<double> target, est;
    target.bins.resize(bins, frames);
    est.bins.resize(bins, frames);
    for (Index c = 0; c < frames; ++c)
      for (Index r = 0; r < bins; ++r) {
        target.bins(r, c) = std::polar(rng.uniform(0.2, 2.0), rng.uniform(0.0, 2 * M_PI));
        est.bins(r, c) = std::polar(rng.uniform(0.2, 2.0), rng.uniform(0.0, 2 * M_PI));
      }

    // Pack (Re, Im) pairs into a flat vector for the FD oracle.
    std::vector<double> x(2 * bins * frames);
    for (Index i = 0; i < bins * frames; ++i) {
      x[2 * i] = est.bins.data()[i].real();
      x[2 * i + 1] = est.bins.data()[i].imag();
    }
    auto f = [&](const std::vector<double>& v) {
      Spectrogram<double> e2 = est;
      for (Index i = 0; i < bins * frames; ++i)
        e2.bins.data()[i] = {v[2 * i], v[2 * i + 1]};
      return freq_mse(e2, target);
    };
    auto fd = oracle::central_diff(f, x);

    const CMat<double> g = freq_mse_grad(est, target);
    VecD analytic(2 * bins * frames), fdv(2 * bins * frames);
    for (Index i = 0; i < bins * frames; ++i) {
      analytic[2 * i] = g.data()[i].real();
      analytic[2 * i + 1] = g.data()[i].imag();
      fdv[2 * i] = fd[2 * i];
      fdv[2 * i + 1] = fd[2 * i + 1];
    }
    CHECK(grad_rel_error(analytic, {fdv.data(), fdv.data() + fdv.size()}) < 1e-4);
  }
}

TEST_CASE("bce and ce gradients vs central differences") {
  RngStream rng(24, "grad.bce");
  for (int rep = 0; rep < 5; ++rep) {
    const Index n = 30;
    VecD p(n), t(n);
    for (Index i = 0; i < n; ++i) {
      p[i] = rng.uniform(0.05, 0.95);
      t[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
    }
    auto f = [&](const std::vector<double>& x) {
      VecD v = Eigen::Map<const VecD>(x.data(), n);
      return static_cast<double>(tsd_bce(v, t));
    };
    auto fd = oracle::central_diff(f, {p.data(), p.data() + n});
    CHECK(grad_rel_error(tsd_bce_grad(p, t), fd) < 1e-5);
  }
}

TEST_CASE("full target-weighted loss gradient wrt the waveform vs central differences") {
  RngStream rng(25, "grad.full");
  FrameSpec spec;
  spec.window_size = 64;
  spec.hop_size = 16;
  const Index n = 400;

  for (int rep = 0; rep < 3; ++rep) {
    VecD y = random_vec(n, rng), yh = random_vec(n, rng);
    RegionMask mask({{0.004, 0.015}}, static_cast<double>(n) / kSr);
    LossWeights w{1.0, 1.0, 1.5};

    VecD analytic;
    tse_loss_weighted_with_grad(yh, y, spec, kSr, mask, w, LossSelect{}, &analytic);

    auto f = [&](const std::vector<double>& x) {
      VecD v = Eigen::Map<const VecD>(x.data(), n);
      VecD dummy;
      return static_cast<double>(
          tse_loss_weighted_with_grad(v, y, spec, kSr, mask, w, LossSelect{}).total);
    };
    auto fd = oracle::central_diff(f, {yh.data(), yh.data() + n});
    CHECK(grad_rel_error(analytic, fd) < 1e-4);
  }
}

TEST_CASE("loss-select ablations keep gradients consistent") {
  RngStream rng(26, "grad.ablate");
  FrameSpec spec;
  spec.window_size = 64;
  spec.hop_size = 16;
  const Index n = 400;
  VecD y = random_vec(n, rng), yh = random_vec(n, rng);
  RegionMask mask({{0.004, 0.015}}, static_cast<double>(n) / kSr);
  LossWeights w{1.0, 1.0, 0.7};

  for (LossSelect sel : {LossSelect{true, false, false}, LossSelect{false, true, false},
                         LossSelect{false, false, true}, LossSelect{true, true, false}}) {
    VecD analytic;
    tse_loss_weighted_with_grad(yh, y, spec, kSr, mask, w, sel, &analytic);
    auto f = [&](const std::vector<double>& x) {
      VecD v = Eigen::Map<const VecD>(x.data(), n);
      return static_cast<double>(
          tse_loss_weighted_with_grad(v, y, spec, kSr, mask, w, sel).total);
    };
    auto fd = oracle::central_diff(f, {yh.data(), yh.data() + n});
    CHECK(grad_rel_error(analytic, fd) < 1e-4);
  }
}
