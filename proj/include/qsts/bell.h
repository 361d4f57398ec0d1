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

#ifndef QSTS_BELL_H
#define QSTS_BELL_H

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "qsts/rng.h"
#include "qsts/state.h"

namespace qsts {

/// Bell-basis outcome. Enumeration order (psi-, psi+, phi-, phi+) is used for
/// every probability vector, histogram and table in the project.
enum class BellOutcome : std::uint8_t { PsiMinus = 0, PsiPlus = 1, PhiMinus = 2, PhiPlus = 3 };

inline constexpr std::array<BellOutcome, 4> kAllBellOutcomes{
    BellOutcome::PsiMinus, BellOutcome::PsiPlus, BellOutcome::PhiMinus, BellOutcome::PhiPlus};

enum class Parity : std::int8_t { Minus = -1, Plus = 1 };

inline Parity operator*(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<int>(a) * static_cast<int>(b));
}
char parity_char(Parity p);
Parity parse_parity(std::string_view s);

/// 1 for psi-type (anti-parallel), 0 for phi-type (parallel).
int bit_value(BellOutcome o);
Parity parity(BellOutcome o);
BellOutcome outcome_from(int bit_value, Parity parity);

std::string_view outcome_name(BellOutcome o);  // "psi-", "psi+", ...
BellOutcome parse_outcome(std::string_view s);

/// The four local unitaries U0..U3:
///   U0 = |0><0| + |1><1|,  U1 = |0><0| - |1><1|,
///   U2 = |1><0| + |0><1|,  U3 = |0><1| - |1><0|.
enum class PauliOp : std::uint8_t { U0 = 0, U1 = 1, U2 = 2, U3 = 3 };

inline constexpr std::array<PauliOp, 4> kAllPauliOps{PauliOp::U0, PauliOp::U1, PauliOp::U2, PauliOp::U3};

/// (op on the first receiver qubit, op on the second).
using PauliPair = std::pair<PauliOp, PauliOp>;

Mat2 pauli_matrix(PauliOp op);
std::string_view pauli_name(PauliOp op);  // "U0".."U3"
PauliOp parse_pauli(std::string_view s);

/// Two-qubit coefficients of the Bell state on basis |00>,|01>,|10>,|11>.
std::array<double, 4> bell_coefficients(BellOutcome kind);

PureState bell_state(BellOutcome kind, const QubitLabel &first, const QubitLabel &second);

/// Outcome probabilities on (first, second), in kAllBellOutcomes order.
std::array<double, 4> bell_probabilities(const PureState &state, const QubitLabel &first,
                                         const QubitLabel &second);

/// <kind|_{first,second} applied to `state`: the unnormalized residual on the
/// remaining qubits, label order preserved. Its squared norm is the outcome
/// probability (times the squared input norm).
PureState bell_project(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                       BellOutcome kind);

/// (|kind><kind| (x) I) applied to `state`, keeping the measured pair in the
/// register. Unnormalized. Diagnostic only; protocols drop measured pairs.
PureState bell_collapse(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                        BellOutcome kind);

struct BellMeasurement {
    BellOutcome outcome;
    double probability;
    /// Normalized post-measurement state with the measured pair removed.
    PureState state;
    /// Rng draw consumed by the sample (absent for forced outcomes).
    std::optional<std::uint64_t> draw_index;
};

/// Samples an outcome from bell_probabilities using one draw of `rng` and
/// returns the renormalized residual.
BellMeasurement bell_measure(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                             Rng &rng);

/// Forced-outcome branch: same as bell_measure but with a chosen outcome.
/// Throws InputError if the outcome has zero probability.
BellMeasurement bell_measure_forced(const PureState &state, const QubitLabel &first,
                                    const QubitLabel &second, BellOutcome kind);

PureState apply_pauli(const PureState &state, PauliOp op, const QubitLabel &target);

PureState apply_pauli_pair(const PureState &state, PauliOp op_i, const QubitLabel &l_i, PauliOp op_j,
                           const QubitLabel &l_j);

}  // namespace qsts

#endif
