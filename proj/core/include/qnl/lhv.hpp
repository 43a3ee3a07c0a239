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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnl/scenario.hpp"

namespace qnl {

/// Requires the product of the named quantities' values to equal `value`.
/// For +/-1 quantities this covers fixed outcomes (one name), equalities
/// (two names, +1), sign-flipped equalities (two names, -1) and composite
/// outcomes (the constituent list of a product observable).
struct ProductTerm {
    std::vector<std::string> names;
    int value = +1;
    std::string display;

    std::string str() const { return display; }
};

/// A deterministic-assignment constraint harvested from one prediction
/// row (or one observed run). `context_labels` records the commuting
/// context the prediction is verifiable in.
struct Constraint {
    enum class Kind { Implication, Event };

    Kind kind = Kind::Implication;
    std::string name;
    std::vector<ProductTerm> antecedent;
    std::vector<ProductTerm> consequent;
    bool negated = false;  // probability-0 rows: the consequent must fail
    std::vector<std::string> context_labels;

    std::string str() const;
    std::string context_tag() const;
};

struct ConstraintSet {
    std::vector<Constraint> constraints;
};

/// Translates prediction rows into constraints: probability-1 rows become
/// one-directional implications given -> target, probability-0 rows become
/// given -> not(target), and anything strictly between contributes
/// nothing.
ConstraintSet constraints_from_predictions(const Scenario& scenario,
                                           std::span<const PredictionRow> rows);

/// Parses an observed-run spec over quantity products, e.g.
/// "A1A3=+1,a1a3=+1,B2b4=+1,b2B4=-1", into an Event constraint. Multi-
/// character names are resolved against the scenario's labels first and
/// tokenized into letter+digit quantity names otherwise.
Constraint event_constraint(const Scenario& scenario, std::string_view spec,
                            std::string name = "observed run");

/// A total +/-1 assignment to every quantity, in sorted-name order.
struct Assignment {
    std::vector<std::pair<std::string, int>> values;
    std::string str() const;
};

struct ModelReport {
    std::uint64_t searched = 0;
    std::vector<Assignment> models;
    bool contradiction = false;
    /// Set when the constraints (plus event) were derived from measurement
    /// contexts that cannot all be realized in one joint measurement. The
    /// enumeration itself ignores this; it is provenance, not verdict.
    bool mixed_contexts = false;
    std::vector<std::string> context_tags;
};

/// Exhaustively enumerates all 2^k assignments of the (sorted) quantities
/// in lexicographic order with +1 before -1, and returns every assignment
/// satisfying all constraints and the optional event. At most 24
/// quantities.
ModelReport find_models(const std::vector<std::string>& quantities,
                        std::span<const Constraint> constraints,
                        const std::optional<Constraint>& event = std::nullopt);

/// True when some pair of the constraints' derivation contexts is not
/// jointly measurable (their union fails pairwise commutation).
bool mixes_incompatible_contexts(const Scenario& scenario,
                                 std::span<const Constraint> constraints,
                                 const std::optional<Constraint>& event = std::nullopt);

/// A minimum-size unsatisfiable subset of the constraints plus a
/// human-readable derivation of the clash.
struct ContradictionCore {
    std::vector<Constraint> core;
    std::vector<std::string> trace;
};

/// Finds a minimum-cardinality unsatisfiable subset of constraints+event
/// by size-ordered subset enumeration, re-verifies it by exhaustive
/// search, and derives the implication chain leading to the clash.
/// Requires report.contradiction; throws NotAContradictionError otherwise.
ContradictionCore explain_contradiction(const ModelReport& report,
                                        const std::vector<std::string>& quantities,
                                        std::span<const Constraint> constraints,
                                        const std::optional<Constraint>& event = std::nullopt);

/// Runs one of the scenario's canned LHV cases end to end: harvest
/// constraints, attach the case event, enumerate, flag context mixing.
struct LhvRun {
    std::string case_name;
    std::vector<std::string> quantities;
    std::vector<Constraint> constraints;
    std::optional<Constraint> event;
    ModelReport report;
    std::optional<ContradictionCore> core;
    std::optional<std::uint64_t> expected_models;
};

LhvRun run_lhv_case(const Scenario& scenario, const LhvCase& lhv_case,
                    const std::optional<std::string>& event_override = std::nullopt);

}  // namespace qnl
