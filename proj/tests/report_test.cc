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

#include "qsts/report.h"

namespace qsts {
namespace {

TEST(Report, AmplitudesRoundTripExactly) {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const Amplitude a{rng.normal() * 1e-7, rng.normal()};
        const auto text = to_json(a).dump();
        EXPECT_EQ(amplitude_from_json(Json::parse(text)), a);
    }
}

TEST(Report, StateRoundTrip) {
    Rng rng(6);
    auto secret = TwoQubitSecret::haar_random(rng);
    auto t = run_protocol(secret, SchemeConfig::circular(3), rng);
    const auto text = to_json(t).dump();
    const auto back = Json::parse(text);
    EXPECT_EQ(back.dump(), text);
    auto received = pure_state_from_json(back["received"]);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(received.amplitude(i), t.received.amplitude(i));
    }
    auto s = secret_from_json(back["secret"]);
    EXPECT_EQ(s.coefficients(), secret.coefficients());
    auto cfg = scheme_config_from_json(back["config"]);
    EXPECT_EQ(cfg.n_agents, 3);
    EXPECT_EQ(cfg.scheme, Scheme::Circular);
}

TEST(Report, TranscriptFields) {
    Rng rng(7);
    auto t = run_protocol(TwoQubitSecret::fiducial(), SchemeConfig::four_epr(), rng);
    auto j = to_json(t);
    EXPECT_EQ(j["kind"], "transcript");
    EXPECT_EQ(j["records"].size(), 4u);
    EXPECT_EQ(j["classical_bits_sent"]["Alice"], 4);
    EXPECT_EQ(j["classical_bits_sent"]["Bob"], 2);
    EXPECT_EQ(j["seed"], 7);
}

TEST(Report, SecretFileValidation) {
    EXPECT_THROW(secret_from_json(Json::parse(R"({"alpha":[1,0]})")), InputError);
    EXPECT_THROW(secret_from_json(Json::parse(R"({"alpha":[1],"beta":[0,0],"gamma":[0,0],"delta":[0,0]})")),
                 InputError);
    EXPECT_THROW(secret_from_json(Json::parse(R"({"alpha":[1,0],"beta":[1,0],"gamma":[0,0],"delta":[0,0]})")),
                 InputError);
    auto s = secret_from_json(Json::parse(R"({"alpha":[0,1],"beta":[0,0],"gamma":[0,0],"delta":[0,0]})"));
    EXPECT_EQ(s.coefficients()[0], Amplitude(0, 1));
}

TEST(Report, CsvColumnsFollowTheSingleOutcome) {
    auto csv = table_to_csv(derive_correction_table(SchemeConfig::four_epr()));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "v_total,v_b5,p_b5,p_total,state_pattern,op_i,op_j");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
    auto bob = table_to_csv(derive_correction_table(SchemeConfig::four_epr(Receiver::Bob)));
    EXPECT_EQ(bob.substr(0, bob.find('\n')), "v_total,v_a3,p_a3,p_total,state_pattern,op_i,op_j");
}

TEST(Report, EnvelopeShape) {
    auto env = make_envelope({{"subcommand", "security"}}, Json::object());
    EXPECT_EQ(env["tool"], "qsts");
    EXPECT_EQ(env["version"], kToolVersion);
    EXPECT_EQ(env["timestamp"].get<std::string>().size(), 20u);
}

}  // namespace
}  // namespace qsts
