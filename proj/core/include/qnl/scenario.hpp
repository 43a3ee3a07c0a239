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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qnl/event.hpp"
#include "qnl/measurement.hpp"
#include "qnl/pauli.hpp"
#include "qnl/state.hpp"

namespace qnl {

/// A party and the qubits it can touch.
struct Observer {
    std::string name;
    std::vector<std::size_t> qubits;
};

/// A named +/-1 quantity measured by one observer on one of its qubits,
/// e.g. A1 for a Z measurement of the first particle.
struct LocalQuantity {
    std::string name;
    std::string observer;
    PauliString observable;
};

/// A labeled product observable together with the local quantities whose
/// outcome product it reads out, e.g. B2b4 for Z on 2 times X on 4.
struct CompositeObservable {
    std::string label;
    std::vector<std::string> constituents;
    PauliString observable;
};

/// One quantitative claim about the scenario state: the probability of
/// `target`, optionally conditioned on `given`. When `intervening` is
/// non-empty the row doubles as a disturbance case: those labels name the
/// joint measurement whose collapse is interposed before testing the row.
struct PredictionRow {
    std::string name;
    EventPredicate target;
    std::optional<EventPredicate> given;
    double probability = 0.0;
    std::vector<std::string> intervening;
};

struct PredictionTable {
    std::vector<PredictionRow> rows;
};

/// A canned hidden-variable enumeration: which rows contribute
/// constraints, the observed-event spec (over quantity products), and the
/// model count the scenario expects.
struct LhvCase {
    std::string name;
    std::vector<std::size_t> row_indices;
    std::optional<std::string> event;
    std::optional<std::uint64_t> expected_models;
};

/// An immutable bundle of state, local quantities, composite observables
/// and the frozen prediction table for one nonlocality argument.
class Scenario {
  public:
    struct Config {
        std::string name;
        StateVector state;
        std::vector<Observer> observers;
        std::vector<LocalQuantity> quantities;
        std::vector<CompositeObservable> composites;
        PredictionTable predictions;
        std::vector<std::string> joint_context_labels;
        std::vector<LhvCase> lhv_cases;
        std::map<std::string, double> fixture_constants;
    };

    /// Validates the bundle: unique labels, every quantity non-identity on
    /// exactly one qubit owned by its observer, and every composite equal
    /// to the symbolic product of its constituents with sign +1.
    explicit Scenario(Config config);

    const std::string& name() const { return config_.name; }
    const StateVector& state() const { return config_.state; }
    const std::vector<Observer>& observers() const { return config_.observers; }
    const std::vector<LocalQuantity>& quantities() const { return config_.quantities; }
    const std::vector<CompositeObservable>& composites() const { return config_.composites; }
    const PredictionTable& predictions() const { return config_.predictions; }
    const std::vector<LhvCase>& lhv_cases() const { return config_.lhv_cases; }
    const std::map<std::string, double>& fixture_constants() const {
        return config_.fixture_constants;
    }

    bool has_label(const std::string& label) const;

    /// Observable behind a quantity name or composite label.
    const PauliString& observable(const std::string& label) const;

    /// Quantity names whose outcome product a label reads out. A plain
    /// quantity maps to itself.
    std::vector<std::string> constituents_of(const std::string& label) const;

    const LocalQuantity& quantity(const std::string& name) const;
    const Observer& observer(const std::string& name) const;

    /// Builds a commuting context from labels; non-commuting selections
    /// propagate NonCommutingError.
    CommutingContext context_for(std::span<const std::string> labels) const;

    const std::vector<std::string>& joint_context_labels() const {
        return config_.joint_context_labels;
    }
    CommutingContext joint_context() const;

    /// Quantity names sorted lexicographically (the hidden-variable
    /// enumeration order).
    std::vector<std::string> quantity_names() const;

    const LhvCase& lhv_case(const std::string& case_name) const;

  private:
    Config config_;
};

/// Two singlet pairs (1,2) and (3,4); Alice holds particles 1 and 3, Bob
/// holds 2 and 4. Quantities are A/B for Z and a/b for X measurements,
/// subscripted by particle. The table freezes the four probability-1
/// conditionals, the 1/8 joint outcome, and the 1/4 pair event.
Scenario build_cabello();

/// Three-qubit GHZ state (|000>+|111>)/sqrt(2), one particle per
/// observer, X and Y quantities. The composite outcomes and the
/// conditional rows are engine-derived and frozen here as fixtures.
Scenario build_ghz();

/// Two-qubit Hardy construction at the point where both parties measure
/// Z or X: state (|00>+|01>+|10>-3|11>)/sqrt(12). Three joint events are
/// impossible, yet the run they jointly forbid has probability 1/12.
/// fixture_constants records the optimum of the general one-angle family
/// (measurement directions free, found by sweep) for comparison.
Scenario build_hardy();

/// Lookup by name: "cabello", "ghz", "hardy". Throws UnknownLabelError.
Scenario build_scenario(const std::string& name);
std::vector<std::string> scenario_names();

/// Result of recomputing a prediction table against the state.
struct RowCheck {
    std::string row;
    double expected = 0.0;
    double computed = 0.0;
    double deviation = 0.0;
};

struct PredictionCheck {
    std::vector<RowCheck> rows;
    double max_deviation = 0.0;
};

/// Recomputes every row of the table from the scenario state through the
/// measurement module and reports per-row deviations. Rows whose
/// referenced observables cannot form one commuting context raise
/// ContextConstructionError.
PredictionCheck check_predictions(const Scenario& scenario, const PredictionTable& table);
PredictionCheck check_predictions(const Scenario& scenario);

}  // namespace qnl
