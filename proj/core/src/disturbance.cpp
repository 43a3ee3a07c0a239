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

#include "qnl/disturbance.hpp"

#include <algorithm>
#include <cmath>

#include "qnl/errors.hpp"

namespace qnl {

namespace {

std::vector<std::string> union_labels(const std::vector<std::string>& a,
                                      std::span<const std::string> b) {
    std::vector<std::string> out = a;
    for (const std::string& label : b) {
        if (std::find(out.begin(), out.end(), label) == out.end()) {
            out.push_back(label);
        }
    }
    return out;
}

}  // namespace

CommutationAudit commutation_audit(std::span<const LocalQuantity> quantities,
                                   const CommutingContext& ctx) {
    CommutationAudit audit;
    audit.context = ctx.str();
    for (const LocalQuantity& q : quantities) {
        if (q.observable.num_qubits() != ctx.num_qubits()) {
            throw SizeMismatchError("quantity '" + q.name +
                                    "' does not span the context register");
        }
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            audit.entries.push_back(
                AuditEntry{q.name, ctx.label(i), commutes(q.observable, ctx.observable(i))});
        }
    }
    return audit;
}

DisturbanceReport prediction_stability(
    const Scenario& scenario, const EventPredicate& given,
    std::span<const std::string> intervening_labels, const EventPredicate& target,
    const std::optional<EventPredicate>& intervening_filter) {
    DisturbanceReport report;
    report.prediction = "P(" + target.str() + " | " + given.str() + ")";

    // Baseline: one commuting context covering the given and target labels.
    const std::vector<std::string> joint_labels =
        union_labels(given.referenced_labels(), target.referenced_labels());
    const CommutingContext before_ctx = scenario.context_for(joint_labels);
    report.p_before =
        conditional_probability(scenario.state(), before_ctx, target, given);

    // Stage one: collapse the given-context observables together with the
    // intervening joint measurement, non-selectively.
    const std::vector<std::string> stage_labels =
        union_labels(given.referenced_labels(), intervening_labels);
    const CommutingContext stage_ctx = scenario.context_for(stage_labels);
    report.stage_labels = stage_labels;

    const CommutingContext target_ctx = scenario.context_for(target.referenced_labels());

    double kept_mass = 0.0;
    double weighted_target = 0.0;
    for (const MeasurementBranch& branch : enumerate_branches(scenario.state(), stage_ctx)) {
        if (!holds(given, stage_ctx, branch.outcomes)) {
            continue;
        }
        if (intervening_filter && !holds(*intervening_filter, stage_ctx, branch.outcomes)) {
            continue;
        }
        const double target_prob =
            joint_distribution(branch.state, target_ctx).event_probability(target);
        report.branches.push_back(
            BranchEntry{branch.outcomes, branch.probability, target_prob});
        kept_mass += branch.probability;
        weighted_target += branch.probability * target_prob;
    }
    if (kept_mass <= kTolerance) {
        throw ConditioningOnNullError("no stage-one branch is consistent with '" +
                                      given.str() + "'");
    }
    report.given_probability = kept_mass;
    report.p_after = weighted_target / kept_mass;

    report.ordering = "collapse " + stage_ctx.str() + " non-selectively, keep branches with " +
                      given.str() +
                      (intervening_filter ? " and " + intervening_filter->str() : "") +
                      ", then measure " + target_ctx.str();
    return report;
}

std::vector<DisturbanceReport> loophole_matrix(const Scenario& scenario) {
    std::vector<DisturbanceReport> reports;
    for (const PredictionRow& row : scenario.predictions().rows) {
        if (!row.given || row.intervening.empty() ||
            std::abs(row.probability - 1.0) > kTolerance) {
            continue;
        }
        DisturbanceReport report =
            prediction_stability(scenario, *row.given, row.intervening, row.target);
        report.prediction = row.name;
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace qnl
