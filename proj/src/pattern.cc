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

#include "qsts/pattern.h"

#include <cctype>
#include <cmath>
#include <sstream>
#include <vector>

namespace qsts {

namespace {

constexpr std::string_view kNames[] = {"alpha", "beta", "gamma", "delta"};
constexpr std::string_view kKets[] = {"|00>", "|01>", "|10>", "|11>"};

// Normalizes so alpha carries +; returns the sign removed.
int canonicalize(StatePattern &p) {
    const int s = p.sign[0];
    for (auto &x : p.sign) {
        x = static_cast<std::int8_t>(x * s);
    }
    return s;
}

}  // namespace

std::string StatePattern::to_string() const {
    std::string out;
    for (int k = 0; k < 4; ++k) {
        if (k == 0) {
            out += sign[k] < 0 ? "-" : "";
        } else {
            out += sign[k] < 0 ? " - " : " + ";
        }
        out += kNames[k];
        out += kKets[basis[k]];
    }
    return out;
}

StatePattern StatePattern::parse(std::string_view text) {
    // Tokens: optional sign, name, ket. Whitespace is insignificant.
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact += c;
        }
    }
    StatePattern p;
    std::array<bool, 4> seen_coeff{};
    std::array<bool, 4> seen_ket{};
    std::size_t pos = 0;
    for (int term = 0; term < 4; ++term) {
        int s = 1;
        if (pos < compact.size() && (compact[pos] == '+' || compact[pos] == '-')) {
            s = compact[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (term > 0) {
            throw InputError("missing sign in state pattern '" + std::string(text) + "'");
        }
        int k = -1;
        for (int c = 0; c < 4; ++c) {
            if (compact.compare(pos, kNames[c].size(), kNames[c]) == 0) {
                k = c;
                pos += kNames[c].size();
                break;
            }
        }
        int b = -1;
        for (int c = 0; c < 4 && k >= 0; ++c) {
            if (compact.compare(pos, kKets[c].size(), kKets[c]) == 0) {
                b = c;
                pos += kKets[c].size();
                break;
            }
        }
        if (k < 0 || b < 0 || seen_coeff[k] || seen_ket[b]) {
            throw InputError("malformed state pattern '" + std::string(text) + "'");
        }
        seen_coeff[k] = seen_ket[b] = true;
        p.basis[k] = static_cast<std::uint8_t>(b);
        p.sign[k] = static_cast<std::int8_t>(s);
    }
    if (pos != compact.size()) {
        throw InputError("trailing text in state pattern '" + std::string(text) + "'");
    }
    canonicalize(p);
    return p;
}

std::pair<StatePattern, int> apply_ops(const StatePattern &pattern, PauliPair ops) {
    const Mat2 mi = pauli_matrix(ops.first);
    const Mat2 mj = pauli_matrix(ops.second);
    StatePattern out;
    for (int k = 0; k < 4; ++k) {
        const int hi = pattern.basis[k] >> 1;
        const int lo = pattern.basis[k] & 1;
        // Each column of a Pauli has one nonzero entry of +-1.
        const int new_hi = std::abs(mi(0, hi)) > 0.5 ? 0 : 1;
        const int new_lo = std::abs(mj(0, lo)) > 0.5 ? 0 : 1;
        const double s = mi(new_hi, hi).real() * mj(new_lo, lo).real();
        out.basis[k] = static_cast<std::uint8_t>(2 * new_hi + new_lo);
        out.sign[k] = static_cast<std::int8_t>(pattern.sign[k] * (s < 0 ? -1 : 1));
    }
    const int removed = canonicalize(out);
    return {out, removed};
}

std::optional<PatternMatch> match_pattern(const PureState &state, const std::array<Amplitude, 4> &coeffs,
                                          double tol) {
    if (state.num_qubits() != 2) {
        throw InputError("state patterns describe two-qubit states");
    }
    auto amps = state.amplitudes();
    double scale = 0;
    for (const auto &a : amps) {
        scale = std::max(scale, std::abs(a));
    }
    if (scale == 0) {
        return std::nullopt;
    }
    // Assign each basis entry to the coefficient with the closest magnitude
    // ratio; ratios are resolved relative to the alpha entry afterwards.
    std::vector<double> coeff_abs(4);
    for (int k = 0; k < 4; ++k) {
        coeff_abs[k] = std::abs(coeffs[k]);
        if (coeff_abs[k] == 0) {
            throw InputError("pattern matching needs nonzero coefficients");
        }
    }
    double norm_c = 0;
    double norm_s = 0;
    for (int k = 0; k < 4; ++k) {
        norm_c += coeff_abs[k] * coeff_abs[k];
        norm_s += std::norm(amps[k]);
    }
    const double mag = std::sqrt(norm_s / norm_c);
    StatePattern p;
    std::array<bool, 4> used{};
    for (int b = 0; b < 4; ++b) {
        int best = -1;
        double best_err = 0;
        for (int k = 0; k < 4; ++k) {
            const double err = std::abs(std::abs(amps[b]) - mag * coeff_abs[k]);
            if (best < 0 || err < best_err) {
                best = k;
                best_err = err;
            }
        }
        if (used[best]) {
            return std::nullopt;
        }
        used[best] = true;
        p.basis[best] = static_cast<std::uint8_t>(b);
    }
    const Amplitude factor = amps[p.basis[0]] / coeffs[0];
    for (int k = 0; k < 4; ++k) {
        const Amplitude ratio = amps[p.basis[k]] / (factor * coeffs[k]);
        if (std::abs(ratio - 1.0) < tol) {
            p.sign[k] = 1;
        } else if (std::abs(ratio + 1.0) < tol) {
            p.sign[k] = -1;
        } else {
            return std::nullopt;
        }
    }
    return PatternMatch{p, factor};
}

}  // namespace qsts
