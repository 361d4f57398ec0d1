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

#include "qsts/bell.h"

#include <cmath>
#include <numbers>

namespace qsts {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

std::size_t insert_zero(std::size_t x, std::size_t bit) {
    const std::size_t low = x & ((std::size_t{1} << bit) - 1);
    return ((x >> bit) << (bit + 1)) | low;
}

struct PairBits {
    std::size_t first;
    std::size_t second;
    std::size_t lo;
    std::size_t hi;
};

PairBits pair_bits(const PureState &state, const QubitLabel &first, const QubitLabel &second) {
    if (first == second) {
        throw LabelError("Bell measurement needs two distinct qubits, got '" + first.name + "' twice");
    }
    PairBits b{state.bit_of(state.position(first)), state.bit_of(state.position(second)), 0, 0};
    b.lo = std::min(b.first, b.second);
    b.hi = std::max(b.first, b.second);
    return b;
}

// Calls fn(residual_index, {a00, a01, a10, a11}) where aXY is the amplitude
// with first=X, second=Y.
template <typename Fn>
void for_each_pair_block(const PureState &state, const PairBits &b, Fn &&fn) {
    auto amps = state.amplitudes();
    const std::size_t rest = state.dimension() >> 2;
    const std::size_t mf = std::size_t{1} << b.first;
    const std::size_t ms = std::size_t{1} << b.second;
    for (std::size_t r = 0; r < rest; ++r) {
        const std::size_t base = insert_zero(insert_zero(r, b.lo), b.hi);
        fn(r, base, std::array<Amplitude, 4>{amps[base], amps[base | ms], amps[base | mf], amps[base | mf | ms]});
    }
}

std::vector<QubitLabel> without(const std::vector<QubitLabel> &labels, const QubitLabel &x, const QubitLabel &y) {
    std::vector<QubitLabel> out;
    for (const auto &l : labels) {
        if (l != x && l != y) {
            out.push_back(l);
        }
    }
    return out;
}

}  // namespace

char parity_char(Parity p) { return p == Parity::Plus ? '+' : '-'; }

Parity parse_parity(std::string_view s) {
    if (s == "+") {
        return Parity::Plus;
    }
    if (s == "-") {
        return Parity::Minus;
    }
    throw InputError("bad parity '" + std::string(s) + "'");
}

int bit_value(BellOutcome o) {
    return (o == BellOutcome::PsiMinus || o == BellOutcome::PsiPlus) ? 1 : 0;
}

Parity parity(BellOutcome o) {
    return (o == BellOutcome::PsiPlus || o == BellOutcome::PhiPlus) ? Parity::Plus : Parity::Minus;
}

BellOutcome outcome_from(int v, Parity p) {
    if (v) {
        return p == Parity::Plus ? BellOutcome::PsiPlus : BellOutcome::PsiMinus;
    }
    return p == Parity::Plus ? BellOutcome::PhiPlus : BellOutcome::PhiMinus;
}

std::string_view outcome_name(BellOutcome o) {
    switch (o) {
        case BellOutcome::PsiMinus:
            return "psi-";
        case BellOutcome::PsiPlus:
            return "psi+";
        case BellOutcome::PhiMinus:
            return "phi-";
        case BellOutcome::PhiPlus:
            return "phi+";
    }
    throw InternalError("bad BellOutcome");
}

BellOutcome parse_outcome(std::string_view s) {
    for (auto o : kAllBellOutcomes) {
        if (outcome_name(o) == s) {
            return o;
        }
    }
    throw InputError("unknown Bell outcome '" + std::string(s) + "'");
}

Mat2 pauli_matrix(PauliOp op) {
    switch (op) {
        case PauliOp::U0:
            return Mat2{{1, 0, 0, 1}};
        case PauliOp::U1:
            return Mat2{{1, 0, 0, -1}};
        case PauliOp::U2:
            return Mat2{{0, 1, 1, 0}};
        case PauliOp::U3:
            // |0><1| - |1><0|
            return Mat2{{0, 1, -1, 0}};
    }
    throw InternalError("bad PauliOp");
}

std::string_view pauli_name(PauliOp op) {
    static constexpr std::string_view names[] = {"U0", "U1", "U2", "U3"};
    return names[static_cast<int>(op)];
}

PauliOp parse_pauli(std::string_view s) {
    for (auto op : kAllPauliOps) {
        if (pauli_name(op) == s) {
            return op;
        }
    }
    throw InputError("unknown local unitary '" + std::string(s) + "'");
}

std::array<double, 4> bell_coefficients(BellOutcome kind) {
    switch (kind) {
        case BellOutcome::PsiMinus:
            return {0, kInvSqrt2, -kInvSqrt2, 0};
        case BellOutcome::PsiPlus:
            return {0, kInvSqrt2, kInvSqrt2, 0};
        case BellOutcome::PhiMinus:
            return {kInvSqrt2, 0, 0, -kInvSqrt2};
        case BellOutcome::PhiPlus:
            return {kInvSqrt2, 0, 0, kInvSqrt2};
    }
    throw InternalError("bad BellOutcome");
}

PureState bell_state(BellOutcome kind, const QubitLabel &first, const QubitLabel &second) {
    if (first == second) {
        throw LabelError("Bell state needs two distinct labels");
    }
    auto c = bell_coefficients(kind);
    return PureState({first, second}, {c[0], c[1], c[2], c[3]});
}

std::array<double, 4> bell_probabilities(const PureState &state, const QubitLabel &first,
                                         const QubitLabel &second) {
    auto bits = pair_bits(state, first, second);
    std::array<double, 4> p{};
    for_each_pair_block(state, bits, [&](std::size_t, std::size_t, const std::array<Amplitude, 4> &a) {
        p[0] += std::norm(a[1] - a[2]);
        p[1] += std::norm(a[1] + a[2]);
        p[2] += std::norm(a[0] - a[3]);
        p[3] += std::norm(a[0] + a[3]);
    });
    for (auto &x : p) {
        x *= 0.5;
    }
    return p;
}

PureState bell_project(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                       BellOutcome kind) {
    auto bits = pair_bits(state, first, second);
    auto c = bell_coefficients(kind);
    std::vector<Amplitude> out(state.dimension() >> 2);
    for_each_pair_block(state, bits, [&](std::size_t r, std::size_t, const std::array<Amplitude, 4> &a) {
        out[r] = c[0] * a[0] + c[1] * a[1] + c[2] * a[2] + c[3] * a[3];
    });
    return PureState(without(state.labels(), first, second), std::move(out));
}

PureState bell_collapse(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                        BellOutcome kind) {
    auto bits = pair_bits(state, first, second);
    auto c = bell_coefficients(kind);
    const std::size_t mf = std::size_t{1} << bits.first;
    const std::size_t ms = std::size_t{1} << bits.second;
    std::vector<Amplitude> out(state.dimension());
    for_each_pair_block(state, bits, [&](std::size_t, std::size_t base, const std::array<Amplitude, 4> &a) {
        const Amplitude overlap = c[0] * a[0] + c[1] * a[1] + c[2] * a[2] + c[3] * a[3];
        out[base] = c[0] * overlap;
        out[base | ms] = c[1] * overlap;
        out[base | mf] = c[2] * overlap;
        out[base | mf | ms] = c[3] * overlap;
    });
    return PureState(state.labels(), std::move(out));
}

BellMeasurement bell_measure_forced(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                                    BellOutcome kind) {
    PureState residual = bell_project(state, first, second, kind);
    const double n = residual.norm();
    const double p = n * n;
    if (p <= 0) {
        throw InputError("forced outcome " + std::string(outcome_name(kind)) + " on " + first.name + "," +
                         second.name + " has zero probability");
    }
    return {kind, p, residual.scaled(1.0 / n), std::nullopt};
}

BellMeasurement bell_measure(const PureState &state, const QubitLabel &first, const QubitLabel &second,
                             Rng &rng) {
    auto probs = bell_probabilities(state, first, second);
    double total = 0;
    for (double p : probs) {
        total += p;
    }
    if (!(total > 1e-300)) {
        throw InternalError("all Bell outcome probabilities vanish; state is corrupt");
    }
    const std::uint64_t draw = rng.draw_index();
    const double u = rng.uniform() * total;
    std::size_t chosen = 3;
    double acc = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        acc += probs[k];
        if (u < acc) {
            chosen = k;
            break;
        }
    }
    while (probs[chosen] == 0.0) {
        // Rounding pushed u past the last nonzero bin.
        --chosen;
    }
    auto m = bell_measure_forced(state, first, second, kAllBellOutcomes[chosen]);
    m.probability = probs[chosen] / total;
    m.draw_index = draw;
    return m;
}

PureState apply_pauli(const PureState &state, PauliOp op, const QubitLabel &target) {
    return apply_one_qubit(state, target, pauli_matrix(op));
}

PureState apply_pauli_pair(const PureState &state, PauliOp op_i, const QubitLabel &l_i, PauliOp op_j,
                           const QubitLabel &l_j) {
    if (l_i == l_j) {
        throw LabelError("correction pair targets the same qubit twice");
    }
    return apply_pauli(apply_pauli(state, op_i, l_i), op_j, l_j);
}

}  // namespace qsts
