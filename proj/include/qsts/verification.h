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

#ifndef QSTS_VERIFICATION_H
#define QSTS_VERIFICATION_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsts/protocol.h"

namespace qsts {

// ---------------------------------------------------------------------------
// Golden tables

/// One printed row. For the Bob-outcome table the key holds
/// (V_Alice, V_b5, P_b5, P_Alice) and r_bob is set.
struct GoldenRow {
    CorrectionKey key;
    std::optional<BellOutcome> r_bob;
    StatePattern pattern;
    PauliPair ops;
};

struct GoldenTable {
    std::string name;
    std::vector<GoldenRow> rows;
};

/// Parses a golden CSV. Lines starting with '#' are comments; the header row
/// decides whether an r_bob column is present. Throws InputError.
GoldenTable parse_golden_table(std::string_view csv, std::string name);

GoldenTable golden_table_four_epr();       // printed four-EPR table
GoldenTable golden_table_bob_outcomes();   // printed R_b5 = phi+ restriction
GoldenTable golden_table_circular();       // printed circular table

struct ExpansionEntry {
    int group;
    BellOutcome r_a3;
    int group_sign;
    BellOutcome r_b5;
    int term_sign;
    StatePattern pattern;
};

/// The printed 16-term expansion of secret (x) psi-_34 (x) psi-_56.
std::vector<ExpansionEntry> printed_expansion();
std::vector<ExpansionEntry> parse_expansion(std::string_view csv);

struct RowCheck {
    GoldenRow printed;
    bool found = false;  // a derived row exists for the printed key
    PauliPair derived_ops{};
    StatePattern derived_pattern;
    bool ops_match = false;
    bool pattern_match = false;
    /// Applying the printed ops to the printed state gives the secret.
    bool printed_self_consistent = false;

    bool passed() const { return found && ops_match && pattern_match; }
};

struct TableCheck {
    std::string name;
    std::vector<RowCheck> rows;
    /// Each of the 16 op pairs appears exactly once among the printed rows.
    bool printed_ops_unique = false;
    double seconds = 0;

    std::size_t matches() const;
    bool passed() const { return printed_ops_unique && matches() == rows.size() && rows.size() == 16; }
};

/// Derived rows in golden form, for comparison.
std::vector<GoldenRow> as_golden_rows(const CorrectionTable &table);

/// Four-EPR/Charlie branches with R_b5 = phi+, grouped by (V_Alice, P_Alice,
/// R_Bob). Throws InconsistentKeyError if a group disagrees.
std::vector<GoldenRow> derive_bob_outcome_table(const TwoQubitSecret &secret = TwoQubitSecret::fiducial());

TableCheck check_table(const GoldenTable &printed, const std::vector<GoldenRow> &derived);

struct CircularConsistency {
    int n_agents;
    /// Keys whose correction differs from the N=2 derivation.
    int differing_keys;
    bool identical_to_n2() const { return differing_keys == 0; }
};

struct GoldenReport {
    TableCheck four_epr;
    TableCheck bob_outcomes;
    TableCheck circular;
    std::vector<CircularConsistency> circular_larger_n;

    bool passed() const;
};

GoldenReport check_golden_tables();

// ---------------------------------------------------------------------------
// Monte Carlo

inline constexpr double kExactFidelity = 1 - 1e-10;

struct MonteCarloSummary {
    SchemeConfig config;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double min_fidelity = 1;
    double mean_fidelity = 0;
    /// Counts of (R_a3, R_b5) in bin 4*a3 + b5, outcome enumeration order.
    std::array<std::uint64_t, 16> histogram{};
    double chi_square = 0;
    /// 99.9% quantile of chi-square with 15 degrees of freedom.
    double chi_square_critical = 0;

    bool exact() const { return min_fidelity >= kExactFidelity; }
    bool uniform() const { return chi_square < chi_square_critical; }
};

/// Each trial t draws a Haar-random secret and runs the full protocol with
/// sampled outcomes, all from Rng(derive_seed(seed, t)). Trials run in
/// parallel; the reduction is in trial order, so results are bit-identical
/// for any thread count. Throws InputError if trials == 0.
MonteCarloSummary monte_carlo_fidelity(const SchemeConfig &config, std::uint64_t trials, std::uint64_t seed,
                                       unsigned threads = 0);

double chi_square_critical_999(int degrees_of_freedom);

// ---------------------------------------------------------------------------
// Security

struct SecurityReport {
    std::uint64_t seed = 0;
    /// Charlie's qubit 8 after Alice's three measurements.
    DensityMatrix rho_8;
    /// Charlie's qubit 6 at the same point. Depends on the secret; reported
    /// for completeness, no claim attached.
    DensityMatrix rho_6;
    double max_deviation_from_mixed = 0;
    /// Minimum over all 64 Alice triples of the number of distinct corrections
    /// Bob's four outcomes demand.
    int distinct_corrections_per_publication = 0;
    int publications_checked = 0;
    /// Worst case over Alice triples of Charlie's best single guess.
    double guess_success_probability = 0;
    /// Best fidelity any wrong correction reaches on the fiducial secret,
    /// over every four-EPR branch.
    double max_wrong_correction_fidelity = 0;

    bool passed() const;
};

SecurityReport security_check(std::uint64_t seed);

// ---------------------------------------------------------------------------
// Expansion audit

struct ExpansionBranch {
    BellOutcome r_a3;
    BellOutcome r_b5;
    int sign;
    StatePattern pattern;
    /// Magnitude of the common factor; 1/4 for every branch.
    double prefactor;
};

struct ExpansionEntryCheck {
    ExpansionEntry printed;
    bool verbatim_match;
};

struct HeaderDiscrepancy {
    int group;
    BellOutcome printed;
    BellOutcome derived;
};

struct ExpansionAudit {
    std::vector<ExpansionBranch> derived;
    std::vector<ExpansionEntryCheck> entries;
    std::size_t verbatim_matches = 0;
    /// Groups whose every entry matches once the header is relabeled.
    std::vector<HeaderDiscrepancy> header_discrepancies;
    /// Mismatched entries no header relabel explains.
    std::size_t unexplained = 0;
    /// After applying the header fixes, each (R_a3, R_b5) occurs exactly once.
    bool corrected_covers_basis = false;
    /// 1 - fidelity of the derived expansion, summed back, with the product
    /// state.
    double reconstruction_infidelity = 1;
    /// Same for the expansion exactly as printed.
    double printed_reconstruction_fidelity = 0;
    bool prefactors_quarter = false;

    bool sole_discrepancy_is_fourth_header() const;
    bool passed() const;
};

ExpansionAudit audit_expansion(const TwoQubitSecret &secret = TwoQubitSecret::fiducial());

}  // namespace qsts

#endif
