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

#include <gtest/gtest.h>

#include <set>

#include "qsts/protocol.h"
#include "test_util.h"

namespace qsts {
namespace {

using B = BellOutcome;
using P = PauliOp;
using testing::labels;
using testing::max_diff;

std::vector<SchemeConfig> all_configs() {
    std::vector<SchemeConfig> out{SchemeConfig::four_epr(Receiver::Charlie), SchemeConfig::four_epr(Receiver::Bob)};
    for (int n = 2; n <= 6; ++n) {
        out.push_back(SchemeConfig::circular(n));
    }
    return out;
}

PureState pattern_state(const char *text, const TwoQubitSecret &s, QubitLabel x, QubitLabel y) {
    auto p = StatePattern::parse(text);
    std::vector<Amplitude> amps(4);
    for (int k = 0; k < 4; ++k) {
        amps[p.basis[k]] = static_cast<double>(p.sign[k]) * s.coefficients()[k];
    }
    return PureState({x, y}, amps);
}

TEST(Secret, NormalizationTolerance) {
    const double tiny = 1 + 1e-12;
    const std::array<double, 8> near{tiny, 0, 0, 0, 0, 0, 0, 0};
    EXPECT_NEAR(std::abs(TwoQubitSecret::from_reals(near).coefficients()[0]), 1.0, 1e-15);
    const std::array<double, 8> far{1, 0, 0, 0, 0, 0, 1, 0};
    EXPECT_THROW(TwoQubitSecret::from_reals(far), InputError);
    const std::array<double, 3> short_list{1, 0, 0};
    EXPECT_THROW(TwoQubitSecret::from_reals(short_list), InputError);
}

TEST(Secret, FiducialHasDistinctMagnitudes) {
    const auto &c = TwoQubitSecret::fiducial().coefficients();
    std::set<double> mags;
    double n = 0;
    for (auto a : c) {
        mags.insert(std::abs(a));
        n += std::norm(a);
    }
    EXPECT_EQ(mags.size(), 4u);
    EXPECT_NEAR(n, 1.0, 1e-15);
}

TEST(Config, Validation) {
    EXPECT_THROW(SchemeConfig::circular(1).validate(), InputError);
    EXPECT_THROW(SchemeConfig::circular(11).validate(), InputError);
    EXPECT_THROW((SchemeConfig{Scheme::FourEpr, 3, Receiver::Charlie}.validate()), InputError);
    EXPECT_THROW((SchemeConfig{Scheme::Circular, 3, Receiver::Bob}.validate()), InputError);
    EXPECT_NO_THROW(SchemeConfig::circular(10).validate());
}

TEST(Setup, FourEprBasisSecretHasSixteenQuarterAmplitudes) {
    const std::array<double, 8> zero{1, 0, 0, 0, 0, 0, 0, 0};
    auto s = build_setup(TwoQubitSecret::from_reals(zero), SchemeConfig::four_epr());
    EXPECT_EQ(s.num_qubits(), 10u);
    int nonzero = 0;
    for (auto a : s.amplitudes()) {
        if (std::abs(a) > 1e-15) {
            ++nonzero;
            EXPECT_NEAR(std::abs(a), 0.25, 1e-15);
        }
    }
    EXPECT_EQ(nonzero, 16);
}

TEST(Setup, ThreePairProductMatchesKronecker) {
    Rng rng(31);
    const auto secret = TwoQubitSecret::haar_random(rng);
    auto s = tensor_product(tensor_product(secret.state("a", "b"), bell_state(B::PsiMinus, "3", "4")),
                            bell_state(B::PsiMinus, "5", "6"));
    const double h = std::sqrt(0.5);
    const std::array<double, 4> psi{0, h, -h, 0};
    int nonzero = 0;
    for (std::size_t i = 0; i < 64; ++i) {
        const Amplitude want = secret.coefficients()[i >> 4] * psi[(i >> 2) & 3] * psi[i & 3];
        EXPECT_NEAR(std::abs(s.amplitude(i) - want), 0, 1e-15);
        nonzero += std::abs(want) > 0 ? 1 : 0;
    }
    EXPECT_EQ(nonzero, 16);
}

TEST(Setup, CircularLabelsAndOwnership) {
    auto two = SchemeConfig::circular(2);
    auto s = build_setup(TwoQubitSecret::fiducial(), two);
    std::set<std::string> names;
    for (const auto &l : s.labels()) {
        names.insert(l.name);
    }
    EXPECT_EQ(names, (std::set<std::string>{"a", "b", "3", "4", "5", "6", "7", "8"}));
    auto own = ownership(two);
    EXPECT_EQ(own["Bob_1"], labels({"4", "7"}));
    EXPECT_EQ(own["Charlie"], labels({"8", "6"}));
    auto own3 = ownership(SchemeConfig::circular(3));
    EXPECT_EQ(own3["Bob_2"], labels({"8", "9"}));
    EXPECT_EQ(own3["Charlie"], labels({"10", "6"}));
}

TEST(Setup, ScheduleShapes) {
    EXPECT_EQ(measurement_schedule(SchemeConfig::four_epr()).size(), 4u);
    for (int n = 2; n <= 10; ++n) {
        auto cfg = SchemeConfig::circular(n);
        EXPECT_EQ(measurement_schedule(cfg).size(), static_cast<std::size_t>(n + 1));
        EXPECT_EQ(build_setup(TwoQubitSecret::fiducial(), cfg).num_qubits(), static_cast<std::size_t>(2 * n + 4));
    }
}

TEST(Publication, EncodingExamples) {
    auto cfg = SchemeConfig::four_epr();
    auto pub = [&](B a3, B b5, B r17) {
        const std::array<B, 4> oc{a3, b5, r17, B::PsiMinus};
        return run_protocol_forced(TwoQubitSecret::fiducial(), cfg, oc).published;
    };
    auto p = pub(B::PsiMinus, B::PsiMinus, B::PsiMinus);
    EXPECT_EQ(std::tuple(p.v_combined, p.v_single, p.p_single, p.p_combined),
              std::tuple(1, 1, Parity::Minus, Parity::Minus));
    p = pub(B::PsiMinus, B::PhiMinus, B::PsiPlus);
    EXPECT_EQ(std::tuple(p.v_combined, p.v_single, p.p_single, p.p_combined),
              std::tuple(0, 0, Parity::Minus, Parity::Plus));
    p = pub(B::PhiPlus, B::PhiPlus, B::PhiPlus);
    EXPECT_EQ(std::tuple(p.v_combined, p.v_single, p.p_single, p.p_combined),
              std::tuple(0, 0, Parity::Plus, Parity::Plus));
}

TEST(Publication, MissingAliceRecordIsAnError) {
    EXPECT_THROW(alice_publication({}, SchemeConfig::four_epr()), InputError);
}

TEST(Forced, AllPsiMinusNeedsNoCorrection) {
    const auto secret = TwoQubitSecret::fiducial();
    const std::array<B, 4> oc{B::PsiMinus, B::PsiMinus, B::PsiMinus, B::PsiMinus};
    auto t = run_protocol_forced(secret, SchemeConfig::four_epr(), oc);
    EXPECT_EQ(t.corrections, PauliPair(P::U0, P::U0));
    EXPECT_NEAR(fidelity_pure(t.received, secret.state("8", "6")), 1.0, 1e-12);
    EXPECT_NEAR(t.fidelity, 1.0, 1e-12);
}

TEST(Forced, WorkedExample) {
    const auto secret = TwoQubitSecret::fiducial();
    const std::array<B, 4> oc{B::PsiMinus, B::PhiMinus, B::PsiPlus, B::PsiMinus};
    auto t = run_protocol_forced(secret, SchemeConfig::four_epr(), oc);
    EXPECT_EQ(t.key.v_total, 1);
    EXPECT_EQ(t.key.p_total, Parity::Minus);
    EXPECT_EQ(t.corrections, PauliPair(P::U1, P::U2));
    EXPECT_GE(t.fidelity, 1 - 1e-10);
}

TEST(Forced, BobOutcomeBranches) {
    const auto secret = TwoQubitSecret::fiducial();
    const auto cfg = SchemeConfig::four_epr();
    const std::array<B, 4> psi_plus{B::PsiMinus, B::PsiMinus, B::PsiMinus, B::PsiPlus};
    const std::array<B, 4> phi_minus{B::PsiMinus, B::PsiMinus, B::PsiMinus, B::PhiMinus};
    EXPECT_NEAR(fidelity_pure(final_state_for_outcomes(secret, cfg, psi_plus),
                              pattern_state("alpha|00> + beta|01> - gamma|10> - delta|11>", secret, "8", "6")),
                1.0, 1e-12);
    EXPECT_NEAR(fidelity_pure(final_state_for_outcomes(secret, cfg, phi_minus),
                              pattern_state("alpha|10> + beta|11> + gamma|00> + delta|01>", secret, "8", "6")),
                1.0, 1e-12);
}

TEST(Forced, CircularAllPsiMinus) {
    const auto secret = TwoQubitSecret::fiducial();
    const std::array<B, 3> oc{B::PsiMinus, B::PsiMinus, B::PsiMinus};
    auto t = run_protocol_forced(secret, SchemeConfig::circular(2), oc);
    EXPECT_EQ(t.key, (CorrectionKey{1, 1, Parity::Minus, Parity::Minus}));
    EXPECT_EQ(t.corrections, PauliPair(P::U0, P::U0));
    EXPECT_NEAR(fidelity_pure(t.received, secret.state("8", "6")), 1.0, 1e-12);
}

TEST(Forced, WrongLengthIsAnError) {
    const std::array<B, 2> oc{B::PsiMinus, B::PsiMinus};
    EXPECT_THROW(run_protocol_forced(TwoQubitSecret::fiducial(), SchemeConfig::four_epr(), oc), InputError);
}

TEST(Forced, SwappedPairHoldsTheMatchingBellState) {
    auto s = tensor_product(bell_state(B::PsiMinus, "1", "2"), bell_state(B::PsiMinus, "7", "8"));
    for (auto k : kAllBellOutcomes) {
        auto m = bell_measure_forced(s, "1", "7", k);
        EXPECT_NEAR(m.probability, 0.25, 1e-15);
        EXPECT_NEAR(fidelity_pure(m.state, bell_state(k, "2", "8")), 1.0, 1e-12);
    }
}

TEST(Forced, FirstTwoMeasurementsTeleportTheSecret) {
    const auto secret = TwoQubitSecret::fiducial();
    auto s = tensor_product(tensor_product(secret.state("a", "b"), bell_state(B::PsiMinus, "3", "4")),
                            bell_state(B::PsiMinus, "5", "6"));
    s = bell_measure_forced(s, "a", "3", B::PsiMinus).state;
    s = bell_measure_forced(s, "b", "5", B::PsiMinus).state;
    EXPECT_NEAR(fidelity_pure(s, secret.state("4", "6")), 1.0, 1e-12);
}

TEST(ReorderLabels, FourQubitStateMatchesDirectConstruction) {
    Rng rng(41);
    auto x = testing::random_state(labels({"2", "8"}), rng);
    auto y = testing::random_state(labels({"4", "6"}), rng);
    auto direct = tensor_product(x, y);
    const std::array<QubitLabel, 4> order{"8", "6", "2", "4"};
    auto got = reorder_labels(direct, order);
    // Oracle: rebuild in the target order amplitude by amplitude.
    for (std::size_t i = 0; i < 16; ++i) {
        const std::size_t b8 = (i >> 3) & 1, b6 = (i >> 2) & 1, b2 = (i >> 1) & 1, b4 = i & 1;
        EXPECT_EQ(got.amplitude(i), x.amplitude(2 * b2 + b8) * y.amplitude(2 * b4 + b6));
    }
}

// Every branch of every scheme: the closed-form correction restores the
// secret exactly.
TEST(Exactness, EveryBranchEveryScheme) {
    Rng rng(51);
    for (const auto &cfg : all_configs()) {
        for (int t = 0; t < 3; ++t) {
            const auto secret = t == 0 ? TwoQubitSecret::fiducial() : TwoQubitSecret::haar_random(rng);
            std::size_t branches = 0;
            double total = 0;
            for_each_branch(secret, cfg, [&](std::span<const B> oc, const PureState &branch) {
                ++branches;
                total += branch.norm() * branch.norm();
                const auto ops = correction_for(correction_key(cfg, oc), cfg);
                const auto &l = branch.labels();
                auto fixed = apply_pauli_pair(branch.normalized(), ops.first, l[0], ops.second, l[1]);
                EXPECT_GE(fidelity_pure(secret.state(l[0], l[1]), fixed), 1 - 1e-10) << cfg.describe();
            });
            EXPECT_EQ(branches, std::size_t{1} << (2 * measurement_schedule(cfg).size()));
            EXPECT_NEAR(total, 1.0, 1e-10);
        }
    }
}

// Every outcome sequence has probability 4^-m.
TEST(Exactness, OutcomesAreUniform) {
    for (const auto &cfg : all_configs()) {
        const double want = std::pow(0.25, static_cast<double>(measurement_schedule(cfg).size()));
        for_each_branch(TwoQubitSecret::fiducial(), cfg, [&](std::span<const B>, const PureState &branch) {
            EXPECT_NEAR(branch.norm() * branch.norm(), want, 1e-14);
        });
    }
}

TEST(Exactness, AliceMeasurementOrderIsIrrelevant) {
    const auto secret = TwoQubitSecret::fiducial();
    const auto setup = build_setup(secret, SchemeConfig::four_epr());
    const std::array<std::array<std::pair<QubitLabel, QubitLabel>, 3>, 2> orders{{
        {{{"a", "3"}, {"b", "5"}, {"1", "7"}}},
        {{{"1", "7"}, {"b", "5"}, {"a", "3"}}},
    }};
    const std::array<B, 3> oc{B::PhiMinus, B::PsiPlus, B::PhiPlus};
    std::vector<PureState> results;
    for (const auto &order : orders) {
        PureState s = setup;
        for (const auto &[x, y] : order) {
            const B k = x.name == "a" ? oc[0] : x.name == "b" ? oc[1] : oc[2];
            s = bell_project(s, x, y, k);
        }
        const std::array<QubitLabel, 4> canon{"2", "4", "6", "8"};
        results.push_back(reorder_labels(s, canon));
    }
    EXPECT_LT(max_diff(results[0], results[1]), 1e-15);
}

TEST(Sampling, SameSeedSameTranscript) {
    for (const auto &cfg : all_configs()) {
        Rng a(77), b(77);
        auto s = TwoQubitSecret::haar_random(a);
        TwoQubitSecret::haar_random(b);
        auto x = run_protocol(s, cfg, a);
        auto y = run_protocol(s, cfg, b);
        ASSERT_EQ(x.records.size(), y.records.size());
        for (std::size_t k = 0; k < x.records.size(); ++k) {
            EXPECT_EQ(x.records[k].outcome, y.records[k].outcome);
            EXPECT_EQ(x.records[k].draw_index, y.records[k].draw_index);
        }
        EXPECT_EQ(x.fidelity, y.fidelity);
        EXPECT_GE(x.fidelity, 1 - 1e-10);
    }
}

TEST(Sampling, ClassicalCost) {
    Rng rng(3);
    for (const auto &cfg : all_configs()) {
        auto t = run_protocol(TwoQubitSecret::fiducial(), cfg, rng);
        EXPECT_EQ(t.classical_bits_sent.at("Alice"), 4);
        for (const auto &c : controllers(cfg)) {
            EXPECT_EQ(t.classical_bits_sent.at(c), 2);
        }
        EXPECT_EQ(t.classical_bits_sent.at(receiver_actor(cfg)), 0);
    }
}

TEST(CorrectionFor, NamedKeys) {
    auto four = SchemeConfig::four_epr();
    EXPECT_EQ(correction_for({0, 1, Parity::Minus, Parity::Plus}, four), PauliPair(P::U0, P::U0));
    EXPECT_EQ(correction_for({0, 0, Parity::Plus, Parity::Plus}, four), PauliPair(P::U3, P::U3));
    EXPECT_EQ(correction_for({1, 0, Parity::Plus, Parity::Minus}, SchemeConfig::circular(2)), PauliPair(P::U3, P::U3));
}

// The closed form agrees with brute-force derivation everywhere, and the
// derived table is one-to-one on op pairs.
TEST(CorrectionFor, MatchesBruteForceTables) {
    for (const auto &cfg : all_configs()) {
        auto table = derive_correction_table(cfg);
        ASSERT_EQ(table.rows.size(), 16u) << cfg.describe();
        std::set<PauliPair> ops;
        for (const auto &row : table.rows) {
            EXPECT_EQ(correction_for(row.key, cfg), row.ops) << cfg.describe() << " " << row.key.to_string();
            EXPECT_EQ(row.branches, std::size_t{1} << (2 * measurement_schedule(cfg).size() - 4));
            ops.insert(row.ops);
        }
        EXPECT_EQ(ops.size(), 16u);
    }
}

TEST(CorrectionFor, TableIndependentOfSecret) {
    Rng rng(61);
    for (const auto &cfg : all_configs()) {
        auto ref = derive_correction_table(cfg);
        auto other = derive_correction_table(cfg, TwoQubitSecret::haar_random(rng));
        for (const auto &row : ref.rows) {
            ASSERT_NE(other.find(row.key), nullptr);
            EXPECT_EQ(other.find(row.key)->ops, row.ops);
        }
    }
}

// Table depends only on the parity of the number of Bell measurements.
TEST(CorrectionFor, CircularTableFollowsMeasurementParity) {
    auto keyed = [](const SchemeConfig &cfg) {
        std::map<CorrectionKey, PauliPair> m;
        for (const auto &row : derive_correction_table(cfg).rows) {
            m[row.key] = row.ops;
        }
        return m;
    };
    const auto four = keyed(SchemeConfig::four_epr());
    const auto even = keyed(SchemeConfig::circular(2));
    EXPECT_EQ(keyed(SchemeConfig::circular(4)), even);
    EXPECT_EQ(keyed(SchemeConfig::circular(3)), four);
    EXPECT_EQ(keyed(SchemeConfig::circular(5)), four);
    EXPECT_NE(even, four);
}

TEST(BruteForce, DegenerateSecretIsReported) {
    const std::array<double, 8> flat{0.5, 0, 0.5, 0, 0.5, 0, 0.5, 0};
    const auto secret = TwoQubitSecret::from_reals(flat);
    EXPECT_THROW(brute_force_correction(secret.state("x", "y"), secret), DegenerateSecretError);
}

}  // namespace
}  // namespace qsts
