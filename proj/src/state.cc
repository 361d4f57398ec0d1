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

#include "qsts/state.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qsts {

namespace {

void check_unique(const std::vector<QubitLabel> &labels) {
    std::set<QubitLabel> seen;
    for (const auto &l : labels) {
        if (l.name.empty()) {
            throw LabelError("empty qubit label");
        }
        if (!seen.insert(l).second) {
            throw LabelError("duplicate qubit label '" + l.name + "'");
        }
    }
}

}  // namespace

Mat2 Mat2::adjoint() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Mat2 Mat2::operator*(const Mat2 &rhs) const {
    Mat2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.m[2 * r + c] = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
        }
    }
    return out;
}

bool Mat2::is_unitary(double tol) const {
    Mat2 p = adjoint() * *this;
    return std::abs(p.m[0] - 1.0) < tol && std::abs(p.m[1]) < tol && std::abs(p.m[2]) < tol &&
           std::abs(p.m[3] - 1.0) < tol;
}

PureState::PureState() : amps_{Amplitude{1.0, 0.0}} {}

PureState::PureState(std::vector<QubitLabel> labels, std::vector<Amplitude> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.size() > kMaxQubits) {
        throw InputError("register of " + std::to_string(labels_.size()) + " qubits exceeds the " +
                         std::to_string(kMaxQubits) + "-qubit limit");
    }
    check_unique(labels_);
    if (amps_.size() != (std::size_t{1} << labels_.size())) {
        throw InputError("amplitude count " + std::to_string(amps_.size()) + " does not match " +
                         std::to_string(labels_.size()) + " qubits");
    }
    for (const auto &a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw InputError("non-finite amplitude");
        }
    }
}

PureState PureState::basis(std::vector<QubitLabel> labels, std::size_t index) {
    std::vector<Amplitude> amps(std::size_t{1} << labels.size());
    amps.at(index) = 1.0;
    return PureState(std::move(labels), std::move(amps));
}

bool PureState::has(const QubitLabel &label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t PureState::position(const QubitLabel &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw LabelError("unknown qubit label '" + label.name + "' in register " + format_labels(labels_));
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

double PureState::norm() const {
    double s = 0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

PureState PureState::normalized() const {
    double n = norm();
    if (n == 0) {
        throw InternalError("cannot normalize a zero vector");
    }
    return scaled(1.0 / n);
}

PureState PureState::scaled(Amplitude factor) const {
    PureState out = *this;
    for (auto &a : out.amps_) {
        a *= factor;
    }
    return out;
}

DensityMatrix::DensityMatrix(std::vector<QubitLabel> labels, std::vector<Amplitude> entries)
    : labels_(std::move(labels)), dim_(std::size_t{1} << labels_.size()), entries_(std::move(entries)) {
    check_unique(labels_);
    if (entries_.size() != dim_ * dim_) {
        throw InputError("density matrix entry count does not match its labels");
    }
}

Amplitude DensityMatrix::trace() const {
    Amplitude t = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double err = 0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        }
    }
    return err;
}

std::vector<double> DensityMatrix::eigenvalues() const {
    Eigen::MatrixXcd m(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            m(r, c) = (*this)(r, c);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double DensityMatrix::deviation_from_maximally_mixed() const {
    double err = 0;
    const double diag = 1.0 / static_cast<double>(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Amplitude expected = r == c ? diag : 0.0;
            err = std::max(err, std::abs((*this)(r, c) - expected));
        }
    }
    return err;
}

PureState tensor_product(const PureState &lhs, const PureState &rhs) {
    std::vector<QubitLabel> labels = lhs.labels();
    labels.insert(labels.end(), rhs.labels().begin(), rhs.labels().end());
    if (labels.size() > kMaxQubits) {
        throw InputError("tensor product exceeds the qubit limit");
    }
    check_unique(labels);
    std::vector<Amplitude> amps;
    amps.reserve(lhs.dimension() * rhs.dimension());
    for (const auto &x : lhs.amplitudes()) {
        for (const auto &y : rhs.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return PureState(std::move(labels), std::move(amps));
}

PureState apply_one_qubit(const PureState &state, const QubitLabel &target, const Mat2 &op) {
    if (!op.is_unitary()) {
        throw InputError("single-qubit operator is not unitary");
    }
    const std::size_t mask = std::size_t{1} << state.bit_of(state.position(target));
    auto in = state.amplitudes();
    std::vector<Amplitude> out(in.begin(), in.end());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const Amplitude a0 = in[i];
        const Amplitude a1 = in[i | mask];
        out[i] = op(0, 0) * a0 + op(0, 1) * a1;
        out[i | mask] = op(1, 0) * a0 + op(1, 1) * a1;
    }
    return PureState(state.labels(), std::move(out));
}

DensityMatrix partial_trace(const PureState &state, std::span<const QubitLabel> keep) {
    if (keep.empty()) {
        throw LabelError("partial trace needs at least one kept qubit");
    }
    std::vector<QubitLabel> kept(keep.begin(), keep.end());
    check_unique(kept);

    const std::size_t n = state.num_qubits();
    std::vector<std::size_t> keep_bits;
    std::vector<bool> is_kept(n, false);
    for (const auto &l : kept) {
        std::size_t p = state.position(l);
        keep_bits.push_back(state.bit_of(p));
        is_kept[p] = true;
    }
    std::vector<std::size_t> env_bits;
    for (std::size_t p = 0; p < n; ++p) {
        if (!is_kept[p]) {
            env_bits.push_back(state.bit_of(p));
        }
    }

    auto scatter = [](std::size_t value, const std::vector<std::size_t> &bits) {
        // bits[0] receives the most significant bit of `value`.
        std::size_t out = 0;
        const std::size_t k = bits.size();
        for (std::size_t j = 0; j < k; ++j) {
            if ((value >> (k - 1 - j)) & 1) {
                out |= std::size_t{1} << bits[j];
            }
        }
        return out;
    };

    const std::size_t dk = std::size_t{1} << keep_bits.size();
    const std::size_t de = std::size_t{1} << env_bits.size();
    std::vector<std::size_t> kidx(dk);
    for (std::size_t r = 0; r < dk; ++r) {
        kidx[r] = scatter(r, keep_bits);
    }
    auto amps = state.amplitudes();
    std::vector<Amplitude> rho(dk * dk);
    for (std::size_t e = 0; e < de; ++e) {
        const std::size_t base = scatter(e, env_bits);
        for (std::size_t r = 0; r < dk; ++r) {
            const Amplitude ar = amps[base | kidx[r]];
            if (ar == Amplitude{}) {
                continue;
            }
            for (std::size_t c = 0; c < dk; ++c) {
                rho[r * dk + c] += ar * std::conj(amps[base | kidx[c]]);
            }
        }
    }
    return DensityMatrix(std::move(kept), std::move(rho));
}

Amplitude inner_product(const PureState &lhs, const PureState &rhs) {
    if (lhs.labels() != rhs.labels()) {
        throw LabelError("label mismatch: " + format_labels(lhs.labels()) + " vs " + format_labels(rhs.labels()));
    }
    auto a = lhs.amplitudes();
    auto b = rhs.amplitudes();
    Amplitude s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

double fidelity_pure(const PureState &lhs, const PureState &rhs) {
    return std::clamp(std::norm(inner_product(lhs, rhs)), 0.0, 1.0);
}

PureState reorder_labels(const PureState &state, std::span<const QubitLabel> new_order) {
    const std::size_t n = state.num_qubits();
    if (new_order.size() != n) {
        throw LabelError("reorder target is not a permutation of " + format_labels(state.labels()));
    }
    std::vector<QubitLabel> labels(new_order.begin(), new_order.end());
    check_unique(labels);
    // src_bit[j]: bit in the old index feeding bit j of the new index.
    std::vector<std::size_t> src_bit(n);
    for (std::size_t p = 0; p < n; ++p) {
        src_bit[n - 1 - p] = state.bit_of(state.position(labels[p]));
    }
    auto in = state.amplitudes();
    std::vector<Amplitude> out(in.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t old = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if ((i >> j) & 1) {
                old |= std::size_t{1} << src_bit[j];
            }
        }
        out[i] = in[old];
    }
    return PureState(std::move(labels), std::move(out));
}

PureState relabel(const PureState &state, std::vector<QubitLabel> new_labels) {
    if (new_labels.size() != state.num_qubits()) {
        throw LabelError("relabel needs exactly one new label per qubit");
    }
    auto a = state.amplitudes();
    return PureState(std::move(new_labels), std::vector<Amplitude>(a.begin(), a.end()));
}

std::string format_labels(std::span<const QubitLabel> labels) {
    std::string s = "(";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += labels[i].name;
    }
    return s + ")";
}

}  // namespace qsts
