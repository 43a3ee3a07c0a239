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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnl/event.hpp"
#include "qnl/measurement.hpp"
#include "qnl/scenario.hpp"

namespace qnl {

/// Cross table of symbolic commutation between local quantities and the
/// observables of a context.
struct AuditEntry {
    std::string quantity;
    std::string observable;
    bool commutes = false;
};

struct CommutationAudit {
    std::string context;
    std::vector<AuditEntry> entries;
};

/// Full quantity-by-observable commutation table. Delegates every check to
/// the symbolic commutation rule; no independent logic.
CommutationAudit commutation_audit(std::span<const LocalQuantity> quantities,
                                   const CommutingContext& ctx);

/// One intervening-outcome branch: the stage-one outcomes, their
/// probability, and the target event's conditional probability in that
/// branch.
struct BranchEntry {
    OutcomeTuple outcomes;
    double probability = 0.0;
    double target_probability = 0.0;
};

/// Before/after comparison of a conditional prediction around an
/// intervening joint measurement.
struct DisturbanceReport {
    std::string prediction;
    double p_before = 0.0;
    double p_after = 0.0;
    /// Probability mass of the branches consistent with the given event
    /// (the branch probabilities below sum to this).
    double given_probability = 0.0;
    std::string ordering;
    std::vector<std::string> stage_labels;
    std::vector<BranchEntry> branches;
};

/// p_before is the conditional P(target | given) in one commuting context.
/// p_after interposes a non-selective collapse of (given-context joint
/// intervening-context), keeps the branches where `given` holds (and the
/// optional selective `intervening_filter`), measures `target` on each
/// surviving branch, and averages. Errors: ConditioningOnNullError when
/// the kept mass vanishes; NonCommutingError when a single stage mixes
/// incompatible observables.
DisturbanceReport prediction_stability(
    const Scenario& scenario, const EventPredicate& given,
    std::span<const std::string> intervening_labels, const EventPredicate& target,
    const std::optional<EventPredicate>& intervening_filter = std::nullopt);

/// One DisturbanceReport per probability-1 conditional prediction row that
/// carries an intervening context (the other observer's joint
/// measurement).
std::vector<DisturbanceReport> loophole_matrix(const Scenario& scenario);

}  // namespace qnl
