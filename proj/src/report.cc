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

#include "qsts/report.h"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace qsts {

namespace {

std::string ops_name(PauliPair ops) {
    return std::string(pauli_name(ops.first)) + "," + std::string(pauli_name(ops.second));
}

Json labels_json(std::span<const QubitLabel> labels) {
    Json out = Json::array();
    for (const auto &l : labels) {
        out.push_back(l.name);
    }
    return out;
}

Json ops_json(PauliPair ops) { return Json::array({pauli_name(ops.first), pauli_name(ops.second)}); }

std::string parity_str(Parity p) { return std::string(1, parity_char(p)); }

}  // namespace

Json to_json(Amplitude a) { return Json::array({a.real(), a.imag()}); }

Json to_json(const PureState &s) {
    Json amps = Json::array();
    for (const auto &a : s.amplitudes()) {
        amps.push_back(to_json(a));
    }
    return {{"labels", labels_json(s.labels())}, {"amplitudes", std::move(amps)}};
}

Json to_json(const DensityMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dimension(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dimension(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return {{"labels", labels_json(m.labels())}, {"entries", std::move(rows)}};
}

Json to_json(const SchemeConfig &c) {
    return {{"scheme", scheme_name(c.scheme)}, {"n_agents", c.n_agents}, {"receiver", receiver_name(c.receiver)}};
}

Json to_json(const TwoQubitSecret &s) {
    const auto &c = s.coefficients();
    return {{"alpha", to_json(c[0])}, {"beta", to_json(c[1])}, {"gamma", to_json(c[2])}, {"delta", to_json(c[3])}};
}

Json to_json(const CorrectionKey &k) {
    return {{"v_total", k.v_total},
            {"v_single", k.v_single},
            {"p_single", parity_str(k.p_single)},
            {"p_total", parity_str(k.p_total)}};
}

Json to_json(const ProtocolTranscript &t) {
    Json records = Json::array();
    for (const auto &r : t.records) {
        Json rec = {{"pair", Json::array({r.first.name, r.second.name})},
                    {"outcome", outcome_name(r.outcome)},
                    {"bit_value", bit_value(r.outcome)},
                    {"parity", parity_str(parity(r.outcome))},
                    {"actor", r.actor},
                    {"probability", r.probability}};
        rec["draw_index"] = r.draw_index ? Json(*r.draw_index) : Json(nullptr);
        records.push_back(std::move(rec));
    }
    Json bits = Json::object();
    for (const auto &[actor, n] : t.classical_bits_sent) {
        bits[actor] = n;
    }
    const auto &p = t.published;
    return {{"kind", "transcript"},
            {"config", to_json(t.config)},
            {"secret", to_json(t.secret)},
            {"seed", t.seed ? Json(*t.seed) : Json(nullptr)},
            {"records", std::move(records)},
            {"published",
             {{"single_pair", Json::array({p.single_pair.first.name, p.single_pair.second.name})},
              {"v_single", p.v_single},
              {"v_combined", p.v_combined},
              {"p_single", parity_str(p.p_single)},
              {"p_combined", parity_str(p.p_combined)}}},
            {"key", to_json(t.key)},
            {"corrections", ops_json(t.corrections)},
            {"final_labels", Json::array({t.final_labels.first.name, t.final_labels.second.name})},
            {"received", to_json(t.received)},
            {"corrected", to_json(t.corrected)},
            {"fidelity", t.fidelity},
            {"classical_bits_sent", std::move(bits)}};
}

Json to_json(const CorrectionTable &t) {
    Json rows = Json::array();
    for (const auto &r : t.rows) {
        Json row = to_json(r.key);
        row["state_pattern"] = r.pattern.to_string();
        row["op_i"] = pauli_name(r.ops.first);
        row["op_j"] = pauli_name(r.ops.second);
        row["branches"] = r.branches;
        rows.push_back(std::move(row));
    }
    const auto single = measurement_schedule(t.config)[single_outcome_index(t.config)];
    return {{"kind", "table"},
            {"config", to_json(t.config)},
            {"single_pair", Json::array({single.first.name, single.second.name})},
            {"rows", std::move(rows)}};
}

Json to_json(const TableCheck &c) {
    Json rows = Json::array();
    for (const auto &r : c.rows) {
        Json row = to_json(r.printed.key);
        row["r_bob"] = r.printed.r_bob ? Json(outcome_name(*r.printed.r_bob)) : Json(nullptr);
        row["printed_ops"] = ops_json(r.printed.ops);
        row["printed_pattern"] = r.printed.pattern.to_string();
        row["derived_ops"] = r.found ? ops_json(r.derived_ops) : Json(nullptr);
        row["derived_pattern"] = r.found ? Json(r.derived_pattern.to_string()) : Json(nullptr);
        row["ops_match"] = r.ops_match;
        row["pattern_match"] = r.pattern_match;
        row["printed_self_consistent"] = r.printed_self_consistent;
        rows.push_back(std::move(row));
    }
    return {{"name", c.name},
            {"matches", c.matches()},
            {"total", c.rows.size()},
            {"printed_ops_unique", c.printed_ops_unique},
            {"passed", c.passed()},
            {"rows", std::move(rows)}};
}

Json to_json(const GoldenReport &r) {
    Json larger = Json::array();
    for (const auto &c : r.circular_larger_n) {
        larger.push_back({{"n_agents", c.n_agents},
                          {"differing_keys", c.differing_keys},
                          {"identical_to_n2", c.identical_to_n2()}});
    }
    return {{"four_epr", to_json(r.four_epr)},
            {"bob_outcomes", to_json(r.bob_outcomes)},
            {"bob_outcomes_restriction", "R_b5 = phi+ only"},
            {"circular", to_json(r.circular)},
            {"circular_larger_n", std::move(larger)},
            {"passed", r.passed()}};
}

Json to_json(const MonteCarloSummary &s) {
    Json hist = Json::array();
    for (auto h : s.histogram) {
        hist.push_back(h);
    }
    return {{"config", to_json(s.config)},
            {"trials", s.trials},
            {"seed", s.seed},
            {"min_fidelity", s.min_fidelity},
            {"mean_fidelity", s.mean_fidelity},
            {"histogram_a3_b5", std::move(hist)},
            {"chi_square", s.chi_square},
            {"chi_square_critical", s.chi_square_critical},
            {"exact", s.exact()},
            {"uniform", s.uniform()}};
}

Json to_json(const SecurityReport &r) {
    return {{"kind", "security"},
            {"seed", r.seed},
            {"rho_8", to_json(r.rho_8)},
            {"rho_6", to_json(r.rho_6)},
            {"max_deviation_from_mixed", r.max_deviation_from_mixed},
            {"distinct_corrections_per_publication", r.distinct_corrections_per_publication},
            {"publications_checked", r.publications_checked},
            {"guess_success_probability", r.guess_success_probability},
            {"max_wrong_correction_fidelity", r.max_wrong_correction_fidelity},
            {"passed", r.passed()}};
}

Json to_json(const ExpansionAudit &a) {
    Json derived = Json::array();
    for (const auto &b : a.derived) {
        derived.push_back({{"r_a3", outcome_name(b.r_a3)},
                           {"r_b5", outcome_name(b.r_b5)},
                           {"sign", b.sign > 0 ? "+" : "-"},
                           {"prefactor", b.prefactor},
                           {"state_pattern", b.pattern.to_string()}});
    }
    Json entries = Json::array();
    for (const auto &e : a.entries) {
        entries.push_back({{"group", e.printed.group},
                           {"r_a3", outcome_name(e.printed.r_a3)},
                           {"r_b5", outcome_name(e.printed.r_b5)},
                           {"verbatim_match", e.verbatim_match}});
    }
    Json headers = Json::array();
    for (const auto &h : a.header_discrepancies) {
        headers.push_back(
            {{"group", h.group}, {"printed", outcome_name(h.printed)}, {"derived", outcome_name(h.derived)}});
    }
    return {{"derived", std::move(derived)},
            {"printed_entries", std::move(entries)},
            {"verbatim_matches", a.verbatim_matches},
            {"header_discrepancies", std::move(headers)},
            {"unexplained", a.unexplained},
            {"corrected_covers_basis", a.corrected_covers_basis},
            {"reconstruction_infidelity", a.reconstruction_infidelity},
            {"printed_reconstruction_fidelity", a.printed_reconstruction_fidelity},
            {"prefactors_quarter", a.prefactors_quarter},
            {"passed", a.passed()}};
}

Amplitude amplitude_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("an amplitude is a [re, im] pair of numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

PureState pure_state_from_json(const Json &j) {
    std::vector<QubitLabel> labels;
    for (const auto &l : j.at("labels")) {
        labels.emplace_back(l.get<std::string>());
    }
    std::vector<Amplitude> amps;
    for (const auto &a : j.at("amplitudes")) {
        amps.push_back(amplitude_from_json(a));
    }
    return PureState(std::move(labels), std::move(amps));
}

SchemeConfig scheme_config_from_json(const Json &j) {
    SchemeConfig c;
    const auto scheme = j.at("scheme").get<std::string>();
    if (scheme == "four-epr") {
        c.scheme = Scheme::FourEpr;
    } else if (scheme == "circular") {
        c.scheme = Scheme::Circular;
    } else {
        throw InputError("unknown scheme '" + scheme + "'");
    }
    c.n_agents = j.at("n_agents").get<int>();
    const auto receiver = j.at("receiver").get<std::string>();
    if (receiver != "bob" && receiver != "charlie") {
        throw InputError("unknown receiver '" + receiver + "'");
    }
    c.receiver = receiver == "bob" ? Receiver::Bob : Receiver::Charlie;
    c.validate();
    return c;
}

TwoQubitSecret secret_from_json(const Json &j) {
    if (!j.is_object()) {
        throw InputError("secret file must hold a JSON object");
    }
    std::array<Amplitude, 4> c;
    const char *names[] = {"alpha", "beta", "gamma", "delta"};
    for (int k = 0; k < 4; ++k) {
        if (!j.contains(names[k])) {
            throw InputError(std::string("secret is missing '") + names[k] + "'");
        }
        c[k] = amplitude_from_json(j.at(names[k]));
    }
    return TwoQubitSecret(c);
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

Json make_envelope(Json request, Json payload) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"timestamp", utc_timestamp()},
            {"request", std::move(request)},
            {"payload", std::move(payload)}};
}

std::string table_to_csv(const CorrectionTable &t) {
    const auto single = measurement_schedule(t.config)[single_outcome_index(t.config)];
    const std::string tag = single.first.name + single.second.name;
    std::ostringstream out;
    out << "v_total,v_" << tag << ",p_" << tag << ",p_total,state_pattern,op_i,op_j\n";
    for (const auto &r : t.rows) {
        out << r.key.v_total << ',' << r.key.v_single << ',' << parity_char(r.key.p_single) << ','
            << parity_char(r.key.p_total) << ',' << r.pattern.to_string() << ',' << ops_name(r.ops) << '\n';
    }
    return out.str();
}

}  // namespace qsts
