// Copyright 2026 The qnlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qnl/disturbance.hpp"
#include "qnl/lhv.hpp"
#include "qnl/measurement.hpp"
#include "qnl/scenario.hpp"

namespace qnl {

/// If x is within tol of a reduced fraction num/den with den a power of
/// two at most max_den, returns {num, den}.
std::optional<std::pair<long long, long long>> dyadic_fraction(double x,
                                                               long long max_den = 64,
                                                               double tol = 1e-12);

/// Decimal with 17 significant digits (round-trip exact), annotated with
/// the dyadic fraction when one matches: "0.125 (1/8)".
std::string format_probability(double x);

/// Bare 17-significant-digit decimal.
std::string format_number(double x);

struct PredictionSection {
    PredictionCheck check;
};

struct DistributionSection {
    std::string context;
    Distribution distribution;
};

struct SampleRow {
    OutcomeTuple outcomes;
    std::uint64_t count = 0;
    double expected_probability = 0.0;
};

struct SamplingSection {
    std::string context;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<SampleRow> rows;
};

struct LhvSection {
    LhvRun run;
};

struct DisturbanceSection {
    std::vector<DisturbanceReport> reports;
};

struct AuditSection {
    CommutationAudit audit;
};

struct ReportMetadata {
    double tolerance = 1e-12;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

/// Deterministic, versioned report. Serializations are byte-stable for
/// identical inputs and every numeric field round-trips exactly.
struct Report {
    std::string schema_version = "1";
    std::string scenario;
    ReportMetadata metadata;
    std::optional<PredictionSection> predictions;
    std::optional<DistributionSection> distribution;
    std::optional<LhvSection> lhv;
    std::optional<DisturbanceSection> disturbance;
    std::optional<AuditSection> audit;
    std::optional<SamplingSection> sampling;
};

std::string to_text(const Report& report);
std::string to_json(const Report& report);
std::string to_csv(const Report& report);

}  // namespace qnl
