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

#include <vector>

#include "adpurify/complex_matrix.hpp"
#include "adpurify/ensemble.hpp"

namespace adpurify::channels {

/// Ordered Kraus operators of a CPTP map. Completeness (sum of K^dag K = I)
/// is checked by validate_cptp, not enforced on construction.
struct KrausChannel {
  std::size_t dim = 2;
  std::vector<qcore::ComplexMatrix> ops;
};

/// Amplitude-damping channel with damping probability gamma. ops[0] is the
/// no-jump attenuation diag(1, sqrt(1-gamma)); ops[1] is the decay jump that
/// maps |1> to sqrt(gamma)|0>.
struct ADChannel {
  double gamma = 0.0;
  KrausChannel channel;

  const qcore::ComplexMatrix& no_jump() const { return channel.ops[0]; }
  const qcore::ComplexMatrix& decay() const { return channel.ops[1]; }
};

ADChannel make_ad(double gamma);

struct CptpReport {
  bool pass = false;
  double max_deviation = 0.0;
};

/// Reports the max entrywise |sum K^dag K - I|; passes iff <= 1e-12.
CptpReport validate_cptp(const KrausChannel& channel);

/// Splits each branch into one branch per Kraus operator, with weight
/// w * <psi|K^dag K|psi> and normalized state K|psi>/||.||. Zero-weight
/// branches are dropped; each surviving branch's Kraus word is extended by
/// the operator index.
qcore::BranchEnsemble apply_channel(const qcore::BranchEnsemble& ensemble,
                                    const KrausChannel& channel, int target);

/// Two-qubit state encoding a single-qubit channel: Bell pair with the
/// channel applied to the second qubit. Pure (single branch) exactly when
/// the channel is unitary.
struct ChoiState {
  std::size_t channel_dim = 2;
  qcore::BranchEnsemble state;

  bool is_pure() const { return state.branches().size() == 1; }
};

ChoiState choi_of(const KrausChannel& channel);

enum class ZParity { commutes, anticommutes, neither };

/// Classifies a 2x2 operator by whether it commutes or anticommutes with
/// Pauli Z, at tolerance 1e-12. The zero matrix satisfies both; it reports
/// as anticommuting, which is the case that arises (the decay operator at
/// gamma = 0).
ZParity z_parity(const qcore::ComplexMatrix& op);

}  // namespace adpurify::channels
