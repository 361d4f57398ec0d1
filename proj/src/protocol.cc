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

#include "qsts/protocol.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsts {

namespace {

QubitLabel num(int n) { return QubitLabel(std::to_string(n)); }

std::string bob(int i) { return "Bob_" + std::to_string(i); }

PauliOp frame_op(int v, Parity p) {
    // Pauli frame of a Bell outcome relative to psi-.
    if (v) {
        return p == Parity::Minus ? PauliOp::U0 : PauliOp::U1;
    }
    return p == Parity::Minus ? PauliOp::U2 : PauliOp::U3;
}

constexpr std::array<PauliPair, 16> kPrintedOrder{{
    {PauliOp::U0, PauliOp::U0}, {PauliOp::U0, PauliOp::U1}, {PauliOp::U1, PauliOp::U0}, {PauliOp::U1, PauliOp::U1},
    {PauliOp::U0, PauliOp::U2}, {PauliOp::U0, PauliOp::U3}, {PauliOp::U1, PauliOp::U2}, {PauliOp::U1, PauliOp::U3},
    {PauliOp::U2, PauliOp::U0}, {PauliOp::U2, PauliOp::U1}, {PauliOp::U3, PauliOp::U0}, {PauliOp::U3, PauliOp::U1},
    {PauliOp::U2, PauliOp::U2}, {PauliOp::U2, PauliOp::U3}, {PauliOp::U3, PauliOp::U2}, {PauliOp::U3, PauliOp::U3},
}};

void check_outcome_count(const SchemeConfig &config, std::span<const BellOutcome> outcomes) {
    const auto m = measurement_schedule(config).size();
    if (outcomes.size() != m) {
        throw InputError(config.describe() + " schedules " + std::to_string(m) + " Bell measurements, got " +
                         std::to_string(outcomes.size()) + " outcomes");
    }
}

std::map<std::string, int> classical_cost(const SchemeConfig &config) {
    std::map<std::string, int> bits{{"Alice", PublishedBits::kBits}};
    for (const auto &c : controllers(config)) {
        // Bit value and parity of one Bell outcome.
        bits[c] = 2;
    }
    bits[receiver_actor(config)] = 0;
    return bits;
}

ProtocolTranscript finish(const TwoQubitSecret &secret, const SchemeConfig &config, PureState remaining,
                          std::vector<MeasurementRecord> records, std::optional<std::uint64_t> seed) {
    std::vector<BellOutcome> outcomes;
    for (const auto &r : records) {
        outcomes.push_back(r.outcome);
    }
    auto [ri, rj] = receiver_qubits(config);
    const std::array<QubitLabel, 2> order{ri, rj};
    if (remaining.num_qubits() != 2) {
        throw InternalError("receiver register has " + std::to_string(remaining.num_qubits()) + " qubits");
    }
    PureState received = reorder_labels(remaining, order);
    CorrectionKey key = correction_key(config, outcomes);
    PauliPair ops = correction_for(key, config);
    PureState corrected = apply_pauli_pair(received, ops.first, ri, ops.second, rj);
    const double fid = fidelity_pure(secret.state(ri, rj), corrected);
    PublishedBits published = alice_publication(records, config);
    return ProtocolTranscript{config,
                              secret,
                              seed,
                              std::move(records),
                              std::move(published),
                              key,
                              ops,
                              {ri, rj},
                              std::move(received),
                              std::move(corrected),
                              fid,
                              classical_cost(config)};
}

}  // namespace

TwoQubitSecret::TwoQubitSecret(std::array<Amplitude, 4> coeffs) : coeffs_(coeffs) {
    double n2 = 0;
    for (const auto &c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw InputError("secret coefficients must be finite");
        }
        n2 += std::norm(c);
    }
    const double n = std::sqrt(n2);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw InputError("secret norm " + std::to_string(n) + " deviates from 1 by more than 1e-9");
    }
    for (auto &c : coeffs_) {
        c /= n;
    }
}

TwoQubitSecret TwoQubitSecret::from_reals(std::span<const double> reals) {
    if (reals.size() != 8) {
        throw InputError("a secret needs 8 reals (re, im for alpha, beta, gamma, delta), got " +
                         std::to_string(reals.size()));
    }
    std::array<Amplitude, 4> c;
    for (int k = 0; k < 4; ++k) {
        c[k] = {reals[2 * k], reals[2 * k + 1]};
    }
    return TwoQubitSecret(c);
}

TwoQubitSecret TwoQubitSecret::haar_random(Rng &rng) {
    std::array<Amplitude, 4> c;
    double n2 = 0;
    do {
        n2 = 0;
        for (auto &x : c) {
            const double re = rng.normal();
            const double im = rng.normal();
            x = {re, im};
            n2 += std::norm(x);
        }
    } while (n2 == 0);
    const double n = std::sqrt(n2);
    for (auto &x : c) {
        x /= n;
    }
    return TwoQubitSecret(c);
}

TwoQubitSecret TwoQubitSecret::fiducial() {
    using std::numbers::pi;
    const std::array<double, 4> mag{1, 2, 3, 4};
    const std::array<double, 4> phase{0, pi / 7, pi / 3, pi / 5};
    std::array<Amplitude, 4> c;
    double n2 = 0;
    for (int k = 0; k < 4; ++k) {
        c[k] = std::polar(mag[k], phase[k]);
        n2 += mag[k] * mag[k];
    }
    for (auto &x : c) {
        x /= std::sqrt(n2);
    }
    return TwoQubitSecret(c);
}

PureState TwoQubitSecret::state(const QubitLabel &first, const QubitLabel &second) const {
    return PureState({first, second}, {coeffs_.begin(), coeffs_.end()});
}

std::string_view scheme_name(Scheme s) { return s == Scheme::FourEpr ? "four-epr" : "circular"; }

std::string_view receiver_name(Receiver r) { return r == Receiver::Bob ? "bob" : "charlie"; }

void SchemeConfig::validate() const {
    if (n_agents < 2 || n_agents > kMaxAgents) {
        throw InputError("number of agents must be in [2, " + std::to_string(kMaxAgents) + "], got " +
                         std::to_string(n_agents));
    }
    if (scheme == Scheme::FourEpr && n_agents != 2) {
        throw InputError("the four-EPR scheme has exactly two agents");
    }
    if (scheme == Scheme::Circular && receiver != Receiver::Charlie) {
        throw InputError("the circular scheme reconstructs at Charlie only");
    }
}

std::string SchemeConfig::describe() const {
    if (scheme == Scheme::FourEpr) {
        return "four-epr/" + std::string(receiver_name(receiver));
    }
    return "circular/N=" + std::to_string(n_agents);
}

std::vector<ScheduledMeasurement> measurement_schedule(const SchemeConfig &config) {
    config.validate();
    std::vector<ScheduledMeasurement> s{{"a", "3", "Alice"}, {"b", "5", "Alice"}};
    if (config.scheme == Scheme::FourEpr) {
        s.push_back({"1", "7", "Alice"});
        if (config.receiver == Receiver::Charlie) {
            s.push_back({"2", "4", "Bob"});
        } else {
            s.push_back({"8", "6", "Charlie"});
        }
        return s;
    }
    s.push_back({"4", "7", bob(1)});
    for (int i = 2; i < config.n_agents; ++i) {
        s.push_back({num(2 * i + 4), num(2 * i + 5), bob(i)});
    }
    return s;
}

std::pair<QubitLabel, QubitLabel> receiver_qubits(const SchemeConfig &config) {
    config.validate();
    if (config.scheme == Scheme::FourEpr) {
        if (config.receiver == Receiver::Charlie) {
            return {"8", "6"};
        }
        return {"4", "2"};
    }
    return {num(2 * config.n_agents + 4), "6"};
}

std::string receiver_actor(const SchemeConfig &config) {
    return config.receiver == Receiver::Bob ? "Bob" : "Charlie";
}

std::vector<std::string> controllers(const SchemeConfig &config) {
    std::vector<std::string> out;
    for (const auto &m : measurement_schedule(config)) {
        if (m.actor != "Alice" && std::find(out.begin(), out.end(), m.actor) == out.end()) {
            out.push_back(m.actor);
        }
    }
    return out;
}

std::map<std::string, std::vector<QubitLabel>> ownership(const SchemeConfig &config) {
    config.validate();
    std::map<std::string, std::vector<QubitLabel>> own;
    if (config.scheme == Scheme::FourEpr) {
        own["Alice"] = {"a", "b", "1", "3", "5", "7"};
        own["Bob"] = {"2", "4"};
        own["Charlie"] = {"8", "6"};
        return own;
    }
    const int n = config.n_agents;
    own["Alice"] = {"a", "b", "3", "5"};
    own[bob(1)] = {"4", "7"};
    for (int i = 2; i < n; ++i) {
        own[bob(i)] = {num(2 * i + 4), num(2 * i + 5)};
    }
    own["Charlie"] = {num(2 * n + 4), "6"};
    return own;
}

std::size_t single_outcome_index(const SchemeConfig &config) {
    return (config.scheme == Scheme::FourEpr && config.receiver == Receiver::Bob) ? 0 : 1;
}

PureState build_setup(const TwoQubitSecret &secret, const SchemeConfig &config) {
    config.validate();
    auto epr = [](int x, int y) { return bell_state(BellOutcome::PsiMinus, num(x), num(y)); };
    PureState s = secret.state("a", "b");
    if (config.scheme == Scheme::FourEpr) {
        for (int p = 1; p <= 7; p += 2) {
            s = tensor_product(s, epr(p, p + 1));
        }
        return s;
    }
    const int n = config.n_agents;
    s = tensor_product(s, epr(3, 4));
    s = tensor_product(s, epr(5, 6));
    for (int i = 1; i <= n - 2; ++i) {
        s = tensor_product(s, epr(2 * i + 5, 2 * i + 6));
    }
    return tensor_product(s, epr(2 * n + 3, 2 * n + 4));
}

std::string CorrectionKey::to_string() const {
    return "(" + std::to_string(v_total) + "," + std::to_string(v_single) + "," + parity_char(p_single) + "," +
           parity_char(p_total) + ")";
}

std::array<CorrectionKey, 16> all_correction_keys() {
    std::array<CorrectionKey, 16> keys;
    std::size_t k = 0;
    for (int vt : {0, 1}) {
        for (int vs : {0, 1}) {
            for (Parity ps : {Parity::Minus, Parity::Plus}) {
                for (Parity pt : {Parity::Minus, Parity::Plus}) {
                    keys[k++] = {vt, vs, ps, pt};
                }
            }
        }
    }
    return keys;
}

CorrectionKey correction_key(const SchemeConfig &config, std::span<const BellOutcome> outcomes) {
    check_outcome_count(config, outcomes);
    CorrectionKey key;
    for (auto o : outcomes) {
        key.v_total ^= bit_value(o);
        key.p_total = key.p_total * parity(o);
    }
    const BellOutcome single = outcomes[single_outcome_index(config)];
    key.v_single = bit_value(single);
    key.p_single = parity(single);
    return key;
}

PauliPair correction_for(const CorrectionKey &key, const SchemeConfig &config) {
    const std::size_t m = measurement_schedule(config).size();
    int v_rest = key.v_total ^ key.v_single;
    Parity p_rest = key.p_total * key.p_single;
    if ((m - 1) % 2 == 0) {
        // An even number of psi- outcomes reads as (0, +); shift it to identity.
        v_rest ^= 1;
        p_rest = p_rest * Parity::Minus;
    }
    const PauliOp single = frame_op(key.v_single, key.p_single);
    const PauliOp rest = frame_op(v_rest, p_rest);
    if (single_outcome_index(config) == 0) {
        return {single, rest};
    }
    return {rest, single};
}

PublishedBits alice_publication(std::span<const MeasurementRecord> records, const SchemeConfig &config) {
    const auto schedule = measurement_schedule(config);
    PublishedBits bits;
    const auto &single = schedule[single_outcome_index(config)];
    bits.single_pair = {single.first, single.second};
    for (const auto &slot : schedule) {
        if (slot.actor != "Alice") {
            continue;
        }
        auto it = std::find_if(records.begin(), records.end(), [&](const MeasurementRecord &r) {
            return r.first == slot.first && r.second == slot.second;
        });
        if (it == records.end()) {
            throw InputError("Alice's measurement on (" + slot.first.name + "," + slot.second.name +
                             ") is missing");
        }
        bits.v_combined ^= bit_value(it->outcome);
        bits.p_combined = bits.p_combined * parity(it->outcome);
        if (slot.first == single.first) {
            bits.v_single = bit_value(it->outcome);
            bits.p_single = parity(it->outcome);
        }
    }
    return bits;
}

ProtocolTranscript run_protocol(const TwoQubitSecret &secret, const SchemeConfig &config, Rng &rng) {
    PureState state = build_setup(secret, config);
    std::vector<MeasurementRecord> records;
    for (const auto &slot : measurement_schedule(config)) {
        auto m = bell_measure(state, slot.first, slot.second, rng);
        records.push_back({slot.first, slot.second, m.outcome, slot.actor, m.probability, m.draw_index});
        state = std::move(m.state);
    }
    return finish(secret, config, std::move(state), std::move(records), rng.seed());
}

ProtocolTranscript run_protocol_forced(const TwoQubitSecret &secret, const SchemeConfig &config,
                                       std::span<const BellOutcome> outcomes) {
    check_outcome_count(config, outcomes);
    PureState state = build_setup(secret, config);
    std::vector<MeasurementRecord> records;
    const auto schedule = measurement_schedule(config);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        const auto &slot = schedule[k];
        auto m = bell_measure_forced(state, slot.first, slot.second, outcomes[k]);
        records.push_back({slot.first, slot.second, m.outcome, slot.actor, m.probability, std::nullopt});
        state = std::move(m.state);
    }
    return finish(secret, config, std::move(state), std::move(records), std::nullopt);
}

PureState final_state_for_outcomes(const TwoQubitSecret &secret, const SchemeConfig &config,
                                   std::span<const BellOutcome> outcomes) {
    check_outcome_count(config, outcomes);
    PureState state = build_setup(secret, config);
    const auto schedule = measurement_schedule(config);
    for (std::size_t k = 0; k < schedule.size(); ++k) {
        state = bell_project(state, schedule[k].first, schedule[k].second, outcomes[k]);
    }
    auto [ri, rj] = receiver_qubits(config);
    const std::array<QubitLabel, 2> order{ri, rj};
    return reorder_labels(state, order).normalized();
}

void for_each_branch(const TwoQubitSecret &secret, const SchemeConfig &config,
                     const std::function<void(std::span<const BellOutcome>, const PureState &)> &visit) {
    const auto schedule = measurement_schedule(config);
    auto [ri, rj] = receiver_qubits(config);
    const std::array<QubitLabel, 2> order{ri, rj};
    std::vector<BellOutcome> prefix;
    prefix.reserve(schedule.size());
    std::function<void(const PureState &)> descend = [&](const PureState &state) {
        if (prefix.size() == schedule.size()) {
            visit(prefix, reorder_labels(state, order));
            return;
        }
        const auto &slot = schedule[prefix.size()];
        for (auto o : kAllBellOutcomes) {
            prefix.push_back(o);
            descend(bell_project(state, slot.first, slot.second, o));
            prefix.pop_back();
        }
    };
    descend(build_setup(secret, config));
}

PauliPair brute_force_correction(const PureState &received, const TwoQubitSecret &secret) {
    const auto &labels = received.labels();
    if (labels.size() != 2) {
        throw InputError("corrections act on a two-qubit receiver state");
    }
    const PureState target = secret.state(labels[0], labels[1]);
    std::vector<PauliPair> hits;
    for (auto i : kAllPauliOps) {
        for (auto j : kAllPauliOps) {
            if (fidelity_pure(target, apply_pauli_pair(received, i, labels[0], j, labels[1])) >= 1 - kNormTolerance) {
                hits.push_back({i, j});
            }
        }
    }
    if (hits.empty()) {
        throw InternalError("no local correction restores the secret; simulator bug");
    }
    if (hits.size() > 1) {
        throw DegenerateSecretError("several corrections restore this secret; pick generic coefficients");
    }
    return hits.front();
}

const CorrectionRule *CorrectionTable::find(const CorrectionKey &key) const {
    auto it = std::find_if(rows.begin(), rows.end(), [&](const CorrectionRule &r) { return r.key == key; });
    return it == rows.end() ? nullptr : &*it;
}

int printed_op_order(PauliPair ops) {
    auto it = std::find(kPrintedOrder.begin(), kPrintedOrder.end(), ops);
    return static_cast<int>(it - kPrintedOrder.begin());
}

CorrectionTable derive_correction_table(const SchemeConfig &config, const TwoQubitSecret &secret) {
    std::map<CorrectionKey, CorrectionRule> by_key;
    for_each_branch(secret, config, [&](std::span<const BellOutcome> outcomes, const PureState &branch) {
        const PureState received = branch.normalized();
        const PauliPair ops = brute_force_correction(received, secret);
        auto match = match_pattern(received, secret.coefficients());
        if (!match) {
            throw InternalError("receiver state is not a signed permutation of the secret");
        }
        const CorrectionKey key = correction_key(config, outcomes);
        auto [it, fresh] = by_key.try_emplace(key, CorrectionRule{key, ops, match->pattern, 0});
        if (!fresh && (it->second.ops != ops || it->second.pattern != match->pattern)) {
            throw InconsistentKeyError("key " + key.to_string() + " maps to both " +
                                       std::string(pauli_name(it->second.ops.first)) +
                                       std::string(pauli_name(it->second.ops.second)) + " and " +
                                       std::string(pauli_name(ops.first)) + std::string(pauli_name(ops.second)));
        }
        ++it->second.branches;
    });
    if (by_key.size() != 16) {
        throw InternalError("derived table has " + std::to_string(by_key.size()) + " keys, expected 16");
    }
    CorrectionTable table{config, {}};
    for (auto &[key, rule] : by_key) {
        table.rows.push_back(rule);
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const CorrectionRule &x, const CorrectionRule &y) {
        return printed_op_order(x.ops) < printed_op_order(y.ops);
    });
    return table;
}

}  // namespace qsts
