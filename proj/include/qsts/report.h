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

#ifndef QSTS_REPORT_H
#define QSTS_REPORT_H

#include <json.hpp>
#include <string>

#include "qsts/protocol.h"
#include "qsts/verification.h"

namespace qsts {

inline constexpr const char *kToolName = "qsts";
inline constexpr const char *kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Amplitudes serialize as [re, im]; nlohmann prints doubles with 17
// significant digits, so values round-trip exactly.
Json to_json(Amplitude a);
Json to_json(const PureState &s);
Json to_json(const DensityMatrix &m);
Json to_json(const SchemeConfig &c);
Json to_json(const TwoQubitSecret &s);
Json to_json(const CorrectionKey &k);
Json to_json(const ProtocolTranscript &t);
Json to_json(const CorrectionTable &t);
Json to_json(const TableCheck &c);
Json to_json(const GoldenReport &r);
Json to_json(const MonteCarloSummary &s);
Json to_json(const SecurityReport &r);
Json to_json(const ExpansionAudit &a);

Amplitude amplitude_from_json(const Json &j);
PureState pure_state_from_json(const Json &j);
SchemeConfig scheme_config_from_json(const Json &j);
/// {"alpha": [re, im], "beta": ..., "gamma": ..., "delta": ...}
TwoQubitSecret secret_from_json(const Json &j);

/// {"tool", "version", "timestamp", "request", "payload"}.
Json make_envelope(Json request, Json payload);

/// Current UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

/// CSV with columns v_total, v_<single>, p_<single>, p_total, state_pattern,
/// op_i, op_j, where <single> is b5 (or a3 when Bob receives).
std::string table_to_csv(const CorrectionTable &t);

}  // namespace qsts

#endif
