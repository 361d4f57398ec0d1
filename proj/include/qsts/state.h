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

#ifndef QSTS_STATE_H
#define QSTS_STATE_H

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsts {

using Amplitude = std::complex<double>;

/// Tolerance used when accepting caller-supplied normalized inputs.
inline constexpr double kNormTolerance = 1e-9;
/// Tolerance used for internal algebraic identities.
inline constexpr double kAlgebraTolerance = 1e-10;
/// Largest register the dense simulator will allocate.
inline constexpr std::size_t kMaxQubits = 24;

/// Raised for unknown, duplicate or otherwise malformed qubit labels.
struct LabelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised for caller input that violates a documented precondition.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when an internal invariant breaks. Always a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct QubitLabel {
    std::string name;

    QubitLabel() = default;
    QubitLabel(std::string n) : name(std::move(n)) {}
    QubitLabel(const char *n) : name(n) {}

    auto operator<=>(const QubitLabel &) const = default;
};

/// Row-major 2x2 complex matrix acting on a single qubit.
struct Mat2 {
    std::array<Amplitude, 4> m{};

    Amplitude operator()(int row, int col) const { return m[2 * row + col]; }
    Mat2 adjoint() const;
    Mat2 operator*(const Mat2 &rhs) const;
    bool is_unitary(double tol = kAlgebraTolerance) const;
};

/// Pure state over an ordered list of labeled qubits.
///
/// The leftmost label is the most significant bit of the amplitude index, so
/// |01>_ab means a=0, b=1 and sits at index 1. Amplitudes are not forced to
/// unit norm: branch projections deliberately carry their weight. Operations
/// that promise a normalized result say so.
class PureState {
  public:
    /// The empty register: zero qubits, a single amplitude equal to 1.
    PureState();
    PureState(std::vector<QubitLabel> labels, std::vector<Amplitude> amps);

    /// Computational basis state |index> over `labels`.
    static PureState basis(std::vector<QubitLabel> labels, std::size_t index);

    const std::vector<QubitLabel> &labels() const { return labels_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude amplitude(std::size_t index) const { return amps_.at(index); }
    std::size_t num_qubits() const { return labels_.size(); }
    std::size_t dimension() const { return amps_.size(); }

    bool has(const QubitLabel &label) const;
    /// Tensor position of `label`; throws LabelError if absent.
    std::size_t position(const QubitLabel &label) const;
    /// Bit index inside the amplitude index for the qubit at `position`.
    std::size_t bit_of(std::size_t position) const { return labels_.size() - 1 - position; }

    double norm() const;
    PureState normalized() const;
    PureState scaled(Amplitude factor) const;

  private:
    std::vector<QubitLabel> labels_;
    std::vector<Amplitude> amps_;
};

/// Density matrix over an ordered list of labels, row-major entries.
class DensityMatrix {
  public:
    DensityMatrix(std::vector<QubitLabel> labels, std::vector<Amplitude> entries);

    const std::vector<QubitLabel> &labels() const { return labels_; }
    std::size_t dimension() const { return dim_; }
    Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    std::span<const Amplitude> entries() const { return entries_; }

    Amplitude trace() const;
    /// Largest elementwise |rho - rho^dagger|.
    double hermiticity_error() const;
    /// Eigenvalues in ascending order; assumes Hermitian input.
    std::vector<double> eigenvalues() const;
    /// Largest elementwise deviation from the maximally mixed state I/d.
    double deviation_from_maximally_mixed() const;

  private:
    std::vector<QubitLabel> labels_;
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

PureState tensor_product(const PureState &lhs, const PureState &rhs);

/// Applies `op` to `target`, identity elsewhere. `op` must be unitary.
PureState apply_one_qubit(const PureState &state, const QubitLabel &target, const Mat2 &op);

/// Reduced density matrix over `keep`, in the order given.
DensityMatrix partial_trace(const PureState &state, std::span<const QubitLabel> keep);

/// |<lhs|rhs>|^2. Labels must agree in content and order.
double fidelity_pure(const PureState &lhs, const PureState &rhs);

/// <lhs|rhs>. Labels must agree in content and order.
Amplitude inner_product(const PureState &lhs, const PureState &rhs);

PureState reorder_labels(const PureState &state, std::span<const QubitLabel> new_order);

/// Same amplitudes, new names. Used to place a reference state onto the qubits
/// that are expected to carry it.
PureState relabel(const PureState &state, std::vector<QubitLabel> new_labels);

std::string format_labels(std::span<const QubitLabel> labels);

}  // namespace qsts

#endif
