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

#ifndef TSE_COMMON_HPP
#define TSE_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tse {

using Eigen::Index;

template <typename Scalar>
using Vec = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Complex spectra are stored with one column per frame (Eigen is
// column-major, so a frame is contiguous).
template <typename Scalar>
using CMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using VecF = Vec<float>;
using VecD = Vec<double>;
using MatF = Mat<float>;
using MatD = Mat<double>;

class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TSE_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name, what) {}    \
  }

TSE_DEFINE_ERROR(InputTooShort);
TSE_DEFINE_ERROR(ShapeMismatch);
TSE_DEFINE_ERROR(DegenerateReference);
TSE_DEFINE_ERROR(DegenerateForeground);
TSE_DEFINE_ERROR(BankTooSmall);
TSE_DEFINE_ERROR(ManifestIntegrityError);
TSE_DEFINE_ERROR(EmptyRegion);
TSE_DEFINE_ERROR(TrainingDiverged);
TSE_DEFINE_ERROR(StageOrderError);
TSE_DEFINE_ERROR(NotFound);
TSE_DEFINE_ERROR(ConfigError);
TSE_DEFINE_ERROR(IoError);

#undef TSE_DEFINE_ERROR

// FNV-1a, used for freeze-discipline hashes and config provenance.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a(const std::string& s,
                           std::uint64_t seed = 0xcbf29ce484222325ull) {
  return fnv1a(s.data(), s.size(), seed);
}

}  // namespace tse

#endif  // TSE_COMMON_HPP
