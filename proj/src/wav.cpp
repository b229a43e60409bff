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

#include "tse/wav.hpp"

#include <cstring>
#include <fstream>
#include <vector>

namespace tse {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

template <typename T>
T read_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;  // little-endian host assumed, as elsewhere in the checkpoint code
}

template <typename T>
void append_le(std::vector<unsigned char>& out, T v) {
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.insert(out.end(), buf, buf + sizeof(T));
}

}  // namespace

WaveformF read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> data((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (data.size() < 44 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0)
    throw IoError("not a RIFF/WAVE file: " + path.string());

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* sample_bytes = nullptr;
  std::uint32_t sample_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const std::uint32_t chunk_size = read_le<std::uint32_t>(&data[pos + 4]);
    const unsigned char* body = &data[pos + 8];
    if (pos + 8 + chunk_size > data.size())
      throw IoError("truncated chunk in " + path.string());
    if (std::memcmp(&data[pos], "fmt ", 4) == 0 && chunk_size >= 16) {
      format = read_le<std::uint16_t>(body);
      channels = read_le<std::uint16_t>(body + 2);
      rate = read_le<std::uint32_t>(body + 4);
      bits = read_le<std::uint16_t>(body + 14);
    } else if (std::memcmp(&data[pos], "data", 4) == 0) {
      sample_bytes = body;
      sample_size = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);
  }

  if (sample_bytes == nullptr) throw IoError("no data chunk in " + path.string());
  if (channels != 1)
    throw IoError("expected mono audio, got " + std::to_string(channels) +
                  " channels: " + path.string());

  WaveformF w;
  w.sample_rate = static_cast<int>(rate);
  if (format == kFormatPcm && bits == 16) {
    const Index n = sample_size / 2;
    w.samples.resize(n);
    for (Index i = 0; i < n; ++i)
      w.samples[i] = read_le<std::int16_t>(sample_bytes + 2 * i) / 32768.0f;
  } else if (format == kFormatIeeeFloat && bits == 32) {
    const Index n = sample_size / 4;
    w.samples.resize(n);
    for (Index i = 0; i < n; ++i)
      w.samples[i] = read_le<float>(sample_bytes + 4 * i);
  } else {
    throw IoError("unsupported WAV encoding (format " + std::to_string(format) +
                  ", " + std::to_string(bits) + " bit): " + path.string());
  }
  return w;
}

void write_wav(const std::filesystem::path& path, const WaveformF& w,
               WavFormat format) {
  const std::uint16_t fmt_tag = format == WavFormat::kPcm16 ? kFormatPcm : kFormatIeeeFloat;
  const std::uint16_t bytes_per_sample = format == WavFormat::kPcm16 ? 2 : 4;
  const std::uint32_t data_size = static_cast<std::uint32_t>(w.size()) * bytes_per_sample;

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  append_le<std::uint32_t>(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  append_le<std::uint32_t>(out, 16);
  append_le<std::uint16_t>(out, fmt_tag);
  append_le<std::uint16_t>(out, 1);  // mono
  append_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate));
  append_le<std::uint32_t>(out, static_cast<std::uint32_t>(w.sample_rate) * bytes_per_sample);
  append_le<std::uint16_t>(out, bytes_per_sample);
  append_le<std::uint16_t>(out, static_cast<std::uint16_t>(8 * bytes_per_sample));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  append_le<std::uint32_t>(out, data_size);

  if (format == WavFormat::kPcm16) {
    for (Index i = 0; i < w.size(); ++i) {
      const float x = std::clamp(w.samples[i], -1.0f, 1.0f);
      append_le<std::int16_t>(out, static_cast<std::int16_t>(std::lrint(x * 32767.0f)));
    }
  } else {
    for (Index i = 0; i < w.size(); ++i) append_le<float>(out, w.samples[i]);
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  os.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!os) throw IoError("short write: " + path.string());
}

}  // namespace tse
