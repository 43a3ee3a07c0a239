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
#include <string>
#include <vector>

#include "qnl/event.hpp"
#include "qnl/pauli.hpp"
#include "qnl/state.hpp"

namespace qnl {

/// One +/-1 outcome per observable of a context, in context order.
/// Ordered so that +1 sorts before -1, matching projector branch order.
class OutcomeTuple {
  public:
    OutcomeTuple() = default;
    explicit OutcomeTuple(std::vector<int> values);

    const std::vector<int>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    int value(std::size_t i) const { return values_.at(i); }

    /// Space-separated rendering, e.g. "+1 +1 +1 -1".
    std::string str() const;

    friend bool operator==(const OutcomeTuple&, const OutcomeTuple&) = default;
    friend bool operator<(const OutcomeTuple& a, const OutcomeTuple& b);

  private:
    std::vector<int> values_;
};

/// A pairwise-commuting, jointly measurable list of labeled observables.
class CommutingContext {
  public:
    /// Validates pairwise commutation at construction and rejects any
    /// non-commuting pair with a diagnostic naming the offenders.
    CommutingContext(std::vector<PauliString> observables, std::vector<std::string> labels);

    std::size_t size() const { return observables_.size(); }
    std::size_t num_qubits() const { return observables_.front().num_qubits(); }
    const std::vector<PauliString>& observables() const { return observables_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const PauliString& observable(std::size_t i) const { return observables_.at(i); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    /// Index of a label; throws UnknownLabelError.
    std::size_t index_of(const std::string& label) const;
    bool has_label(const std::string& label) const;

    /// Comma-joined label list, e.g. "{A1A3, B2, B4}".
    std::string str() const;

  private:
    std::vector<PauliString> observables_;
    std::vector<std::string> labels_;
};

/// Convenience wrapper mirroring the context constructor.
CommutingContext make_context(std::vector<PauliString> observables,
                              std::vector<std::string> labels);

/// Exact outcome distribution of a joint measurement. Zero-probability
/// tuples (below kTolerance) are omitted.
class Distribution {
  public:
    Distribution() = default;
    Distribution(std::vector<std::string> labels, std::map<OutcomeTuple, double> entries);

    const std::vector<std::string>& labels() const { return labels_; }
    const std::map<OutcomeTuple, double>& entries() const { return entries_; }

    double probability(const OutcomeTuple& t) const;
    double total() const;

    /// Probability mass of the tuples satisfying the predicate. Throws
    /// UnknownLabelError when the predicate references a label that is
    /// not part of this distribution.
    double event_probability(const EventPredicate& event) const;

  private:
    std::vector<std::string> labels_;
    std::map<OutcomeTuple, double> entries_;
};

/// One projective branch of a joint measurement: the surviving
/// renormalized state and the branch probability.
struct MeasurementBranch {
    OutcomeTuple outcomes;
    StateVector state;
    double probability = 0.0;
};

/// Evaluates an event against one outcome tuple of a context.
bool holds(const EventPredicate& event, const CommutingContext& ctx, const OutcomeTuple& t);

/// Exact joint outcome distribution over a commuting context, computed by
/// chaining the eigenprojectors (I +/- p)/2 through the state. The result
/// is independent of the projector order because the context commutes.
Distribution joint_distribution(const StateVector& s, const CommutingContext& ctx);

/// All nonzero-probability branches of the joint measurement, with
/// renormalized post-measurement states. Branch probabilities sum to 1.
std::vector<MeasurementBranch> enumerate_branches(const StateVector& s,
                                                  const CommutingContext& ctx);

/// P(target | given) from the exact joint distribution. Throws
/// ConditioningOnNullError when P(given) <= kTolerance.
double conditional_probability(const StateVector& s, const CommutingContext& ctx,
                               const EventPredicate& target, const EventPredicate& given);

struct CollapseResult {
    StateVector state;
    double probability = 0.0;
};

/// Projects onto the `outcome` eigenspace of p, i.e. applies
/// (I + outcome*p)/2, and returns the renormalized state together with the
/// branch probability. Throws ZeroProbabilityBranchError when the branch
/// carries no mass.
CollapseResult collapse(const StateVector& s, const PauliString& p, int outcome);

/// n independent draws from joint_distribution(s, ctx).
///
/// Reproducibility contract: the generator is std::mt19937_64 seeded with
/// `seed`; each draw consumes one 64-bit word x and forms the uniform
/// variate (x >> 11) * 2^-53; the draw selects the first tuple, in
/// Distribution order (+1 before -1, lexicographic), whose cumulative
/// probability exceeds the variate. Identical seeds give identical counts
/// on every platform.
std::map<OutcomeTuple, std::uint64_t> sample_outcomes(const StateVector& s,
                                                      const CommutingContext& ctx,
                                                      std::uint64_t n, std::uint64_t seed);

}  // namespace qnl
