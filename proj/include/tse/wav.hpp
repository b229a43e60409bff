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

#ifndef TSE_WAV_HPP
#define TSE_WAV_HPP

#include <filesystem>

#include "tse/dsp.hpp"

namespace tse {

enum class WavFormat { kPcm16, kFloat32 };

// Mono PCM WAV only (16-bit integer or 32-bit IEEE float).
WaveformF read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const WaveformF& w,
               WavFormat format = WavFormat::kFloat32);

}  // namespace tse

#endif  // TSE_WAV_HPP
