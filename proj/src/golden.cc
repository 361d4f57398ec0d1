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

#include <sstream>

#include "qsts/verification.h"

namespace qsts {

namespace golden_data {
extern const char *const k_four_epr;
extern const char *const k_bob_outcomes;
extern const char *const k_circular;
extern const char *const k_expansion;
}  // namespace golden_data

namespace {

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

// Non-comment, non-blank lines.
std::vector<std::string> data_lines(std::string_view csv) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(csv)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        lines.push_back(line);
    }
    return lines;
}

int parse_bit(const std::string &s) {
    if (s == "0") {
        return 0;
    }
    if (s == "1") {
        return 1;
    }
    throw InputError("bad bit value '" + s + "'");
}

int parse_sign(const std::string &s) { return static_cast<int>(parse_parity(s)); }

}  // namespace

GoldenTable parse_golden_table(std::string_view csv, std::string name) {
    auto lines = data_lines(csv);
    if (lines.empty()) {
        throw InputError("golden table '" + name + "' is empty");
    }
    const auto header = split(lines.front());
    const bool has_bob = header.size() == 8;
    if (header.size() != (has_bob ? 8u : 7u)) {
        throw InputError("golden table '" + name + "' has an unexpected header");
    }
    GoldenTable table{std::move(name), {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        if (cells.size() != header.size()) {
            throw InputError("golden table '" + table.name + "' line " + std::to_string(i) + " has " +
                             std::to_string(cells.size()) + " cells");
        }
        GoldenRow row;
        row.key = {parse_bit(cells[0]), parse_bit(cells[1]), parse_parity(cells[2]), parse_parity(cells[3])};
        std::size_t c = 4;
        if (has_bob) {
            row.r_bob = parse_outcome(cells[c++]);
        }
        row.pattern = StatePattern::parse(cells[c++]);
        row.ops.first = parse_pauli(cells[c++]);
        row.ops.second = parse_pauli(cells[c++]);
        table.rows.push_back(row);
    }
    return table;
}

GoldenTable golden_table_four_epr() { return parse_golden_table(golden_data::k_four_epr, "four-epr"); }

GoldenTable golden_table_bob_outcomes() { return parse_golden_table(golden_data::k_bob_outcomes, "bob-outcomes"); }

GoldenTable golden_table_circular() { return parse_golden_table(golden_data::k_circular, "circular"); }

std::vector<ExpansionEntry> parse_expansion(std::string_view csv) {
    auto lines = data_lines(csv);
    std::vector<ExpansionEntry> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto cells = split(lines[i]);
        if (cells.size() != 6) {
            throw InputError("expansion line " + std::to_string(i) + " has " + std::to_string(cells.size()) +
                             " cells");
        }
        out.push_back({std::stoi(cells[0]), parse_outcome(cells[1]), parse_sign(cells[2]), parse_outcome(cells[3]),
                       parse_sign(cells[4]), StatePattern::parse(cells[5])});
    }
    return out;
}

std::vector<ExpansionEntry> printed_expansion() { return parse_expansion(golden_data::k_expansion); }

}  // namespace qsts
