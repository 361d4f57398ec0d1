// Copyright 2026 The QSTS Authors
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

#ifndef QSTS_PATTERN_H
#define QSTS_PATTERN_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qsts/bell.h"
#include "qsts/state.h"

namespace qsts {

/// A two-qubit state written as a signed permutation of the secret's
/// coefficients, e.g. "alpha|01> - beta|00> + gamma|11> - delta|10>".
///
/// Coefficient k (alpha=0 .. delta=3) sits on basis index basis[k] with sign
/// sign[k]. The overall sign is factored out so sign[0] is always +1.
struct StatePattern {
    std::array<std::uint8_t, 4> basis{0, 1, 2, 3};
    std::array<std::int8_t, 4> sign{1, 1, 1, 1};

    static StatePattern identity() { return {}; }
    /// Parses the format produced by to_string(). Throws InputError.
    static StatePattern parse(std::string_view text);

    std::string to_string() const;
    bool operator==(const StatePattern &) const = default;
};

/// (op_i (x) op_j) applied to the pattern, computed exactly on the signed
/// permutation. Returns the new pattern and the sign that was factored out.
std::pair<StatePattern, int> apply_ops(const StatePattern &pattern, PauliPair ops);

struct PatternMatch {
    StatePattern pattern;
    /// state = factor * sum_k sign[k] * coeff[k] |basis[k]>
    Amplitude factor;
};

/// Recognizes `state` (two qubits) as a signed permutation of `coeffs` times
/// a common factor. The coefficients must have pairwise-distinct nonzero
/// magnitudes. Returns nullopt if no pattern fits within `tol` (relative).
std::optional<PatternMatch> match_pattern(const PureState &state, const std::array<Amplitude, 4> &coeffs,
                                          double tol = 1e-9);

}  // namespace qsts

#endif
