// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDIFF_RANDOM_H_
#define PRIVDIFF_RANDOM_H_

#include <cstdint>
#include <random>

namespace privdiff {

// Portable random stream built on std::mt19937_64, whose output sequence is
// fixed by the standard. The <random> distributions are implementation
// defined, so the conversions to doubles and bounded integers live here to
// keep streams identical across standard libraries.
class RandomStream {
 public:
  static constexpr const char* kGeneratorName = "mt19937_64/privdiff-v1";

  explicit RandomStream(uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();
  // Uniform on (0, 1].
  double UniformPositive();
  // Exponential variate with the given rate (> 0).
  double Exponential(double rate);
  // Uniform integer in [0, bound). `bound` must be positive.
  uint64_t Below(uint64_t bound);

  uint64_t NextBits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace privdiff

#endif  // PRIVDIFF_RANDOM_H_
