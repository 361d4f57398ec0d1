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

// qsts: run the sharing schemes, derive correction tables, verify.
//
// Exit codes: 0 success, 1 a check failed, 2 bad usage or input.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>
#include <string>
#include <vector>

#include "qsts/report.h"

namespace {

using namespace qsts;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Request {
    std::string subcommand;
    std::string scheme = "four-epr";
    std::optional<int> agents;
    std::string receiver = "charlie";
    std::vector<double> secret;
    std::string secret_file;
    bool random_state = false;
    std::optional<std::uint64_t> seed;
    std::uint64_t trials = 10000;
    std::string format = "json";
    std::string out;
    bool check = false;
};

Json echo(const Request &r) {
    Json j = {{"subcommand", r.subcommand}};
    if (r.subcommand == "run" || r.subcommand == "derive-table") {
        j["scheme"] = r.scheme;
        j["agents"] = r.agents ? Json(*r.agents) : Json(nullptr);
        j["receiver"] = r.receiver;
    }
    if (r.subcommand == "run") {
        j["secret"] = r.secret.empty() ? Json(nullptr) : Json(r.secret);
        j["secret_file"] = r.secret_file.empty() ? Json(nullptr) : Json(r.secret_file);
        j["random_state"] = r.random_state;
    }
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    if (r.subcommand == "verify") {
        j["trials"] = r.trials;
    }
    j["format"] = r.format;
    if (r.subcommand == "derive-table") {
        j["check"] = r.check;
    }
    return j;
}

SchemeConfig config_of(const Request &r) {
    SchemeConfig c;
    c.scheme = r.scheme == "circular" ? Scheme::Circular : Scheme::FourEpr;
    c.receiver = r.receiver == "bob" ? Receiver::Bob : Receiver::Charlie;
    c.n_agents = r.agents.value_or(2);
    c.validate();
    return c;
}

std::uint64_t require_seed(const Request &r) {
    if (!r.seed) {
        throw UsageError(r.subcommand + " is stochastic and needs --seed");
    }
    return *r.seed;
}

void emit(const Request &r, const std::string &text) {
    if (r.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(r.out);
    if (!f) {
        throw InputError("cannot write '" + r.out + "'");
    }
    f << text;
    spdlog::info("report written to {}", r.out);
}

void emit_json(const Request &r, Json payload) { emit(r, make_envelope(echo(r), std::move(payload)).dump(2) + "\n"); }

int cmd_run(const Request &r) {
    const auto config = config_of(r);
    const std::uint64_t seed = require_seed(r);
    const int sources = (r.secret.empty() ? 0 : 1) + (r.secret_file.empty() ? 0 : 1) + (r.random_state ? 1 : 0);
    if (sources > 1) {
        throw UsageError("--secret, --secret-file and --random-state are mutually exclusive");
    }
    Rng rng(seed);
    std::optional<TwoQubitSecret> secret;
    if (!r.secret.empty()) {
        secret = TwoQubitSecret::from_reals(r.secret);
    } else if (!r.secret_file.empty()) {
        std::ifstream f(r.secret_file);
        if (!f) {
            throw InputError("cannot read '" + r.secret_file + "'");
        }
        Json j;
        try {
            j = Json::parse(f);
        } catch (const Json::parse_error &e) {
            throw InputError("secret file is not JSON: " + std::string(e.what()));
        }
        secret = secret_from_json(j);
    } else if (r.random_state) {
        secret = TwoQubitSecret::haar_random(rng);
    } else {
        secret = TwoQubitSecret::fiducial();
    }
    spdlog::info("run {} seed={}", config.describe(), seed);
    const auto t = run_protocol(*secret, config, rng);
    for (const auto &rec : t.records) {
        spdlog::debug("{} measures ({},{}) -> {}", rec.actor, rec.first.name, rec.second.name, outcome_name(rec.outcome));
    }
    spdlog::info("key {} corrections {},{} fidelity {:.17g}", t.key.to_string(), pauli_name(t.corrections.first),
                 pauli_name(t.corrections.second), t.fidelity);
    emit_json(r, to_json(t));
    return t.fidelity >= 1 - 1e-9 ? kExitOk : kExitFailed;
}

int cmd_derive_table(const Request &r) {
    const auto config = config_of(r);
    const auto table = derive_correction_table(config);
    std::optional<TableCheck> check;
    if (r.check) {
        if (config.receiver == Receiver::Bob) {
            throw UsageError("no printed table exists for a Bob receiver");
        }
        const auto printed = config.scheme == Scheme::FourEpr ? golden_table_four_epr() : golden_table_circular();
        check = check_table(printed, as_golden_rows(table));
        spdlog::info("{}: {}/{} printed rows match", printed.name, check->matches(), check->rows.size());
        for (const auto &row : check->rows) {
            if (!row.passed()) {
                spdlog::debug("mismatch at {}: printed {},{} derived {},{}", row.printed.key.to_string(),
                              pauli_name(row.printed.ops.first), pauli_name(row.printed.ops.second),
                              pauli_name(row.derived_ops.first), pauli_name(row.derived_ops.second));
            }
        }
    }
    if (r.format == "csv") {
        emit(r, table_to_csv(table));
    } else {
        Json payload = to_json(table);
        payload["check"] = check ? to_json(*check) : Json(nullptr);
        emit_json(r, std::move(payload));
    }
    return !check || check->passed() ? kExitOk : kExitFailed;
}

int cmd_verify(const Request &r) {
    const std::uint64_t seed = require_seed(r);
    if (r.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
    const std::vector<SchemeConfig> configs{SchemeConfig::four_epr(Receiver::Charlie),
                                            SchemeConfig::four_epr(Receiver::Bob), SchemeConfig::circular(2),
                                            SchemeConfig::circular(3), SchemeConfig::circular(5)};
    Json mc = Json::array();
    bool ok = true;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        // Campaigns get disjoint seeds so no two share trial secrets.
        const auto s = monte_carlo_fidelity(configs[k], r.trials, derive_seed(seed, k));
        spdlog::info("monte carlo {}: min fidelity {:.17g}, chi2 {:.3f}", configs[k].describe(), s.min_fidelity,
                     s.chi_square);
        ok = ok && s.exact();
        mc.push_back(to_json(s));
    }
    const bool uniform = mc[0]["uniform"].get<bool>();
    ok = ok && uniform;

    const auto golden = check_golden_tables();
    const auto audit = audit_expansion();
    const auto security = security_check(seed);
    ok = ok && golden.passed() && audit.passed() && security.passed();

    std::cerr << "monte carlo exact:   " << (std::all_of(mc.begin(), mc.end(), [](const Json &j) {
                     return j["exact"].get<bool>();
                 }) ? "pass" : "FAIL")
              << "\n"
              << "outcome uniformity:  " << (uniform ? "pass" : "FAIL") << "\n"
              << "four-epr table:      " << golden.four_epr.matches() << "/16\n"
              << "bob-outcome table:   " << golden.bob_outcomes.matches() << "/16\n"
              << "circular table:      " << golden.circular.matches() << "/16\n"
              << "expansion audit:     " << (audit.passed() ? "pass" : "FAIL") << "\n"
              << "security:            " << (security.passed() ? "pass" : "FAIL") << "\n"
              << "overall:             " << (ok ? "pass" : "FAIL") << "\n";

    Json payload = {{"kind", "verification"},
                    {"seed", seed},
                    {"trials", r.trials},
                    {"monte_carlo", std::move(mc)},
                    {"golden", to_json(golden)},
                    {"expansion_audit", to_json(audit)},
                    {"security", to_json(security)},
                    {"passed", ok}};
    emit_json(r, std::move(payload));
    return ok ? kExitOk : kExitFailed;
}

int cmd_security(const Request &r) {
    const auto report = security_check(require_seed(r));
    spdlog::info("rho_8 deviation {:.3g}, guess {:.17g}", report.max_deviation_from_mixed,
                 report.guess_success_probability);
    emit_json(r, to_json(report));
    return report.passed() ? kExitOk : kExitFailed;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("qsts");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    const char *env = std::getenv("QSTS_LOG");
    const std::string level = env ? env : "error";
    if (level == "error") {
        spdlog::set_level(spdlog::level::err);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else {
        throw UsageError("QSTS_LOG must be error, info or debug");
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum state sharing: simulate, derive tables, verify", "qsts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    Request req;
    auto *run = app.add_subcommand("run", "Run one protocol instance");
    auto *derive = app.add_subcommand("derive-table", "Derive the receiver's correction table");
    auto *verify = app.add_subcommand("verify", "Full verification campaign");
    auto *security = app.add_subcommand("security", "Controller-security checks");

    for (auto *sub : {run, derive}) {
        sub->add_option("--scheme", req.scheme, "four-epr or circular")
            ->check(CLI::IsMember({"four-epr", "circular"}));
        sub->add_option("--agents", req.agents, "Agents including the receiver (circular)");
        sub->add_option("--receiver", req.receiver, "bob or charlie (four-epr)")
            ->check(CLI::IsMember({"bob", "charlie"}));
    }
    auto *secret = run->add_option("--secret", req.secret, "alpha..delta as 8 reals, re/im interleaved")
                       ->delimiter(',')
                       ->expected(8);
    auto *secret_file = run->add_option("--secret-file", req.secret_file, "JSON secret file");
    auto *random = run->add_flag("--random-state", req.random_state, "Haar-random secret from --seed");
    secret->excludes(secret_file, random);
    secret_file->excludes(random);
    for (auto *sub : {run, verify, security}) {
        sub->add_option("--seed", req.seed, "Master seed");
    }
    verify->add_option("--trials", req.trials, "Monte Carlo trials per scheme");
    for (auto *sub : {run, derive, verify, security}) {
        sub->add_option("--format", req.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", req.out, "Write the report here instead of stdout");
    }
    derive->add_flag("--check", req.check, "Compare against the printed table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        setup_logging();
        req.subcommand = app.get_subcommands().front()->get_name();
        if (req.format == "csv" && req.subcommand != "derive-table") {
            throw UsageError("--format csv is only available for derive-table");
        }
        if (req.subcommand == "run") {
            return cmd_run(req);
        }
        if (req.subcommand == "derive-table") {
            return cmd_derive_table(req);
        }
        if (req.subcommand == "verify") {
            return cmd_verify(req);
        }
        return cmd_security(req);
    } catch (const UsageError &e) {
        std::cerr << "qsts: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        // InputError and LabelError.
        std::cerr << "qsts: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "qsts: internal error: " << e.what() << "\n";
        return kExitFailed;
    }
}
