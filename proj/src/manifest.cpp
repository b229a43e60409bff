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

#include <json.hpp>

#include <fstream>

#include "tse/synth.hpp"

namespace tse {

using nlohmann::json;

namespace {

json record_to_json(const ManifestRecord& r) {
  json events = json::array();
  for (const EventAnnotation& e : r.events)
    events.push_back({{"onset", e.onset}, {"offset", e.offset}});
  json interf = json::array();
  for (const InterferenceMeta& m : r.interferences)
    interf.push_back({{"class_id", m.class_id}, {"snr_db", m.snr_db}, {"onset", m.onset}});
  return json{{"id", r.id},
              {"mixture_path", r.mixture_path},
              {"target_path", r.target_path},
              {"reference_path", r.reference_path},
              {"class_id", r.class_id},
              {"events", events},
              {"interferences", interf},
              {"background_id", r.background_id},
              {"seed", r.seed}};
}

ManifestRecord record_from_json(const json& j) {
  ManifestRecord r;
  r.id = j.at("id").get<std::string>();
  r.mixture_path = j.at("mixture_path").get<std::string>();
  r.target_path = j.at("target_path").get<std::string>();
  r.reference_path = j.at("reference_path").get<std::string>();
  r.class_id = j.at("class_id").get<int>();
  for (const json& e : j.at("events"))
    r.events.push_back({e.at("onset").get<double>(), e.at("offset").get<double>(),
                        r.class_id});
  for (const json& m : j.at("interferences"))
    r.interferences.push_back({m.at("class_id").get<int>(), m.at("snr_db").get<double>(),
                               m.at("onset").get<double>()});
  r.background_id = j.at("background_id").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

}  // namespace

void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest " + path.string());
  for (const ManifestRecord& r : m.records) out << record_to_json(r).dump() << "\n";
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound("manifest not found: " + path.string());
  Manifest m;
  m.base_dir = path.parent_path();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ManifestIntegrityError("bad manifest line: " + std::string(e.what()));
    }
    ManifestRecord r = record_from_json(j);
    for (const std::string* p : {&r.mixture_path, &r.target_path, &r.reference_path}) {
      if (!std::filesystem::exists(m.base_dir / *p))
        throw ManifestIntegrityError("example " + r.id + ": missing audio file " + *p);
    }
    m.records.push_back(std::move(r));
  }
  return m;
}

MixtureExample load_example(const Manifest& m, Index i) {
  if (i < 0 || i >= m.size())
    throw NotFound("example index " + std::to_string(i) + " out of range");
  const ManifestRecord& r = m.records[static_cast<std::size_t>(i)];
  MixtureExample ex;
  ex.id = r.id;
  ex.mixture = read_wav(m.base_dir / r.mixture_path);
  ex.target = read_wav(m.base_dir / r.target_path);
  ex.reference.audio = read_wav(m.base_dir / r.reference_path);
  ex.reference.class_id = r.class_id;
  ex.target_events = r.events;
  ex.interference_meta = r.interferences;
  ex.background_id = r.background_id;
  ex.target_class = r.class_id;
  ex.example_index = r.seed;
  return ex;
}

Manifest build_dataset(const SoundBank& fg_bank, const std::vector<AudioClip>& bg_bank,
                       const SynthConfig& cfg, int n_examples,
                       const std::filesystem::path& out_dir, WavFormat format) {
  std::filesystem::create_directories(out_dir / "audio");
  Manifest m;
  m.base_dir = out_dir;
  for (int i = 0; i < n_examples; ++i) {
    MixtureExample ex = synthesize_example(fg_bank, bg_bank, cfg,
                                           static_cast<std::uint64_t>(i));
    ManifestRecord r;
    r.id = ex.id;
    r.mixture_path = "audio/" + ex.id + "_mixture.wav";
    r.target_path = "audio/" + ex.id + "_target.wav";
    r.reference_path = "audio/" + ex.id + "_reference.wav";
    r.class_id = ex.target_class;
    r.events = ex.target_events;
    r.interferences = ex.interference_meta;
    r.background_id = ex.background_id;
    r.seed = ex.example_index;
    write_wav(out_dir / r.mixture_path, ex.mixture, format);
    write_wav(out_dir / r.target_path, ex.target, format);
    write_wav(out_dir / r.reference_path, ex.reference.audio, format);
    m.records.push_back(std::move(r));
  }
  save_manifest(m, out_dir / "manifest.jsonl");
  return m;
}

}  // namespace tse
