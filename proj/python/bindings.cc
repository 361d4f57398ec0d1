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

// Python bindings. Structured results cross as JSON text; the package
// __init__ decodes them, so Python sees exactly what the CLI writes.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsts/report.h"

namespace py = pybind11;
using namespace qsts;

namespace {

SchemeConfig make_config(const std::string &scheme, int agents, const std::string &receiver) {
    Json j = {{"scheme", scheme}, {"n_agents", agents}, {"receiver", receiver}};
    return scheme_config_from_json(j);
}

TwoQubitSecret make_secret(const std::vector<Amplitude> &coeffs) {
    if (coeffs.size() != 4) {
        throw InputError("secret needs four complex coefficients");
    }
    return TwoQubitSecret({coeffs[0], coeffs[1], coeffs[2], coeffs[3]});
}

std::vector<BellOutcome> parse_outcomes(const std::vector<std::string> &names) {
    std::vector<BellOutcome> out;
    for (const auto &n : names) {
        out.push_back(parse_outcome(n));
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum state sharing simulator core";
    m.attr("__version__") = QSTS_VERSION;

    m.def(
        "run_protocol",
        [](const std::vector<Amplitude> &secret, const std::string &scheme, int agents, const std::string &receiver,
           std::uint64_t seed) {
            Rng rng(seed);
            return to_json(run_protocol(make_secret(secret), make_config(scheme, agents, receiver), rng)).dump();
        },
        py::arg("secret"), py::arg("scheme") = "four-epr", py::arg("agents") = 2, py::arg("receiver") = "charlie",
        py::arg("seed") = 0);

    m.def(
        "run_forced",
        [](const std::vector<Amplitude> &secret, const std::vector<std::string> &outcomes, const std::string &scheme,
           int agents, const std::string &receiver) {
            const auto list = parse_outcomes(outcomes);
            return to_json(run_protocol_forced(make_secret(secret), make_config(scheme, agents, receiver), list)).dump();
        },
        py::arg("secret"), py::arg("outcomes"), py::arg("scheme") = "four-epr", py::arg("agents") = 2,
        py::arg("receiver") = "charlie");

    m.def(
        "haar_secret",
        [](std::uint64_t seed) {
            Rng rng(seed);
            const auto &c = TwoQubitSecret::haar_random(rng).coefficients();
            return std::vector<Amplitude>(c.begin(), c.end());
        },
        py::arg("seed"));

    m.def(
        "derive_table",
        [](const std::string &scheme, int agents, const std::string &receiver) {
            return to_json(derive_correction_table(make_config(scheme, agents, receiver))).dump();
        },
        py::arg("scheme") = "four-epr", py::arg("agents") = 2, py::arg("receiver") = "charlie");

    m.def(
        "table_csv",
        [](const std::string &scheme, int agents, const std::string &receiver) {
            return table_to_csv(derive_correction_table(make_config(scheme, agents, receiver)));
        },
        py::arg("scheme") = "four-epr", py::arg("agents") = 2, py::arg("receiver") = "charlie");

    m.def(
        "correction_for",
        [](int v_total, int v_single, const std::string &p_single, const std::string &p_total,
           const std::string &scheme, int agents, const std::string &receiver) {
            const CorrectionKey key{v_total, v_single, parse_parity(p_single), parse_parity(p_total)};
            const auto ops = correction_for(key, make_config(scheme, agents, receiver));
            return std::make_pair(std::string(pauli_name(ops.first)), std::string(pauli_name(ops.second)));
        },
        py::arg("v_total"), py::arg("v_single"), py::arg("p_single"), py::arg("p_total"),
        py::arg("scheme") = "four-epr", py::arg("agents") = 2, py::arg("receiver") = "charlie");

    m.def(
        "bell_state",
        [](const std::string &name) {
            const auto s = bell_state(parse_outcome(name), "x", "y");
            return std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end());
        },
        py::arg("name"));

    m.def("check_golden", [] { return to_json(check_golden_tables()).dump(); });
    m.def("audit_expansion", [] { return to_json(audit_expansion()).dump(); });
    m.def(
        "security_check", [](std::uint64_t seed) { return to_json(security_check(seed)).dump(); }, py::arg("seed"));
    m.def(
        "monte_carlo",
        [](const std::string &scheme, int agents, const std::string &receiver, std::uint64_t trials,
           std::uint64_t seed) {
            const auto config = make_config(scheme, agents, receiver);
            py::gil_scoped_release release;
            return to_json(monte_carlo_fidelity(config, trials, seed)).dump();
        },
        py::arg("scheme") = "four-epr", py::arg("agents") = 2, py::arg("receiver") = "charlie",
        py::arg("trials") = 1000, py::arg("seed") = 0);
}
