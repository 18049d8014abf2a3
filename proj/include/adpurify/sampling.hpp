// Copyright 2026 The adpurify developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "adpurify/pure_state.hpp"

namespace adpurify::channels {
struct KrausChannel;
}

namespace adpurify::sampling {

/// Counter-based generator: the state is derived by hashing (seed, stream),
/// so sample i is a pure function of (seed, i) and parallel and serial
/// sweeps draw identical values. The core is the splitmix64 sequence.
class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01();

  /// Standard normal via Box-Muller; pairs are cached.
  double normal();

  qcore::Complex complex_normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class SampleKind { single_qubit_state, two_qubit_state, unitary_channel };

enum class Distribution { uniform_alpha, haar_real, haar_complex };

struct SampleSpec {
  SampleKind kind = SampleKind::single_qubit_state;
  Distribution distribution = Distribution::uniform_alpha;
  std::uint64_t seed = 0;
};

/// Normalized state, deterministic in (spec.seed, index).
///  - uniform_alpha (single qubit): alpha uniform on [0,1), beta =
///    sqrt(1 - alpha^2), zero phases.
///  - haar_real / haar_complex: normalized vector of i.i.d. real / complex
///    standard normals.
qcore::PureState sample_state(const SampleSpec& spec, std::uint64_t index);

/// Single-Kraus channel whose operator is a Haar-random 2x2 unitary,
/// obtained by Gram-Schmidt orthonormalization of a complex Gaussian matrix.
channels::KrausChannel sample_unitary_channel(const SampleSpec& spec, std::uint64_t index);

}  // namespace adpurify::sampling
