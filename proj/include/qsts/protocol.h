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

#ifndef QSTS_PROTOCOL_H
#define QSTS_PROTOCOL_H

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsts/bell.h"
#include "qsts/pattern.h"
#include "qsts/rng.h"
#include "qsts/state.h"

namespace qsts {

/// alpha|00> + beta|01> + gamma|10> + delta|11>, unit norm.
class TwoQubitSecret {
  public:
    /// Accepts coefficients whose norm is within kNormTolerance of 1 and
    /// renormalizes them exactly; anything further off is an InputError.
    explicit TwoQubitSecret(std::array<Amplitude, 4> coeffs);

    /// Interleaved (re, im) for alpha, beta, gamma, delta.
    static TwoQubitSecret from_reals(std::span<const double> reals);
    /// Uniform on the unit sphere of C^4 (eight normals, normalized).
    static TwoQubitSecret haar_random(Rng &rng);
    /// Generic secret used for table derivation: (1,2,3,4) with phases
    /// (0, pi/7, pi/3, pi/5), normalized. Magnitudes and phases are all
    /// distinct so no wrong correction can reproduce it.
    static TwoQubitSecret fiducial();

    const std::array<Amplitude, 4> &coefficients() const { return coeffs_; }
    PureState state(const QubitLabel &first, const QubitLabel &second) const;

  private:
    std::array<Amplitude, 4> coeffs_;
};

enum class Scheme { FourEpr, Circular };
enum class Receiver { Bob, Charlie };

std::string_view scheme_name(Scheme s);  // "four-epr" / "circular"
std::string_view receiver_name(Receiver r);

struct SchemeConfig {
    Scheme scheme = Scheme::FourEpr;
    /// Number of agents including the receiver. FourEpr is always 2.
    int n_agents = 2;
    Receiver receiver = Receiver::Charlie;

    static SchemeConfig four_epr(Receiver receiver = Receiver::Charlie) { return {Scheme::FourEpr, 2, receiver}; }
    static SchemeConfig circular(int n_agents) { return {Scheme::Circular, n_agents, Receiver::Charlie}; }

    /// Throws InputError for n_agents outside [2, 10], FourEpr with other than
    /// two agents, or a non-Charlie circular receiver.
    void validate() const;
    std::string describe() const;
};

inline constexpr int kMaxAgents = 10;

struct ScheduledMeasurement {
    QubitLabel first;
    QubitLabel second;
    std::string actor;
};

/// Bell measurements in execution order. Alice's come first.
std::vector<ScheduledMeasurement> measurement_schedule(const SchemeConfig &config);

/// The receiver's two qubits, ordered so they carry (a, b) respectively.
std::pair<QubitLabel, QubitLabel> receiver_qubits(const SchemeConfig &config);

std::string receiver_actor(const SchemeConfig &config);
/// Agents whose measurement the receiver needs, in schedule order.
std::vector<std::string> controllers(const SchemeConfig &config);
std::map<std::string, std::vector<QubitLabel>> ownership(const SchemeConfig &config);

/// Schedule index of the Alice outcome announced on its own: R_b5 normally,
/// R_a3 when Bob is the four-EPR receiver (R_b5 alone leaves his key
/// ambiguous).
std::size_t single_outcome_index(const SchemeConfig &config);

/// Full initial register: the secret on (a, b) followed by the scheme's psi-
/// pairs.
PureState build_setup(const TwoQubitSecret &secret, const SchemeConfig &config);

/// (V_total, V_single, P_single, P_total). V_single/P_single belong to the
/// individually announced Alice outcome (R_b5 unless Bob receives).
struct CorrectionKey {
    int v_total = 0;
    int v_single = 0;
    Parity p_single = Parity::Plus;
    Parity p_total = Parity::Plus;

    auto operator<=>(const CorrectionKey &) const = default;
    std::string to_string() const;
};

/// Every key, in (v_total, v_single, p_single, p_total) order with - before +.
std::array<CorrectionKey, 16> all_correction_keys();

CorrectionKey correction_key(const SchemeConfig &config, std::span<const BellOutcome> outcomes);

/// Receiver correction for a key: a Pauli-frame closed form.
///
/// The qubit fed by the singly announced outcome needs the frame of that
/// outcome alone. The other qubit needs the combined frame of the remaining
/// m-1 outcomes, which the key gives as (V_total xor V_single,
/// P_total * P_single). Frames are read with psi- as identity, so the
/// combined reading is shifted by one psi- whenever m is odd.
PauliPair correction_for(const CorrectionKey &key, const SchemeConfig &config);

struct MeasurementRecord {
    QubitLabel first;
    QubitLabel second;
    BellOutcome outcome;
    std::string actor;
    double probability;
    std::optional<std::uint64_t> draw_index;
};

struct PublishedBits {
    /// The individually announced pair, (b,5) or (a,3).
    std::pair<QubitLabel, QubitLabel> single_pair;
    int v_single = 0;
    int v_combined = 0;
    Parity p_single = Parity::Plus;
    Parity p_combined = Parity::Plus;

    static constexpr int kBits = 4;
};

/// Alice's four announced bits. Throws InputError if any of her scheduled
/// measurements is missing from `records`.
PublishedBits alice_publication(std::span<const MeasurementRecord> records, const SchemeConfig &config);

struct ProtocolTranscript {
    SchemeConfig config;
    TwoQubitSecret secret;
    std::optional<std::uint64_t> seed;
    std::vector<MeasurementRecord> records;
    PublishedBits published;
    CorrectionKey key;
    PauliPair corrections;
    std::pair<QubitLabel, QubitLabel> final_labels;
    /// Receiver pair before and after correction, in final_labels order.
    PureState received;
    PureState corrected;
    double fidelity = 0;
    std::map<std::string, int> classical_bits_sent;
};

ProtocolTranscript run_protocol(const TwoQubitSecret &secret, const SchemeConfig &config, Rng &rng);

/// Same, with every outcome chosen by the caller (schedule order). Throws
/// InputError on a wrong-length list.
ProtocolTranscript run_protocol_forced(const TwoQubitSecret &secret, const SchemeConfig &config,
                                       std::span<const BellOutcome> outcomes);

/// Receiver pair before correction for a forced outcome list, normalized, in
/// receiver_qubits order.
PureState final_state_for_outcomes(const TwoQubitSecret &secret, const SchemeConfig &config,
                                   std::span<const BellOutcome> outcomes);

/// Visits every outcome combination of the schedule depth-first, sharing
/// projections along common prefixes. The receiver state passed to `visit` is
/// unnormalized; its squared norm is the branch probability.
void for_each_branch(const TwoQubitSecret &secret, const SchemeConfig &config,
                     const std::function<void(std::span<const BellOutcome>, const PureState &)> &visit);

/// Raised when the fiducial secret admits more than one exact correction.
struct DegenerateSecretError : InputError {
    using InputError::InputError;
};

/// The unique pair among all 16 that maps `received` onto the secret with
/// fidelity >= 1 - 1e-9. Throws InternalError if none does, and
/// DegenerateSecretError if several do.
PauliPair brute_force_correction(const PureState &received, const TwoQubitSecret &secret);

struct CorrectionRule {
    CorrectionKey key;
    PauliPair ops;
    /// Receiver state before correction.
    StatePattern pattern;
    std::size_t branches = 0;
};

struct CorrectionTable {
    SchemeConfig config;
    /// Sorted by ops in the printed order U0U0, U0U1, U1U0, U1U1, U0U2, ...
    std::vector<CorrectionRule> rows;

    const CorrectionRule *find(const CorrectionKey &key) const;
};

/// Position of an op pair in the printed table order.
int printed_op_order(PauliPair ops);

/// Raised when two branches with the same key need different corrections.
struct InconsistentKeyError : InternalError {
    using InternalError::InternalError;
};

/// Re-derives the correction table by enumerating every outcome combination,
/// brute-forcing the correction for each and grouping by key.
CorrectionTable derive_correction_table(const SchemeConfig &config,
                                        const TwoQubitSecret &secret = TwoQubitSecret::fiducial());

}  // namespace qsts

#endif
