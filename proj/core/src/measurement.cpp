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

#include "qnl/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace qnl {

namespace {

// Unnormalized amplitudes threaded through a projector chain.
struct RawBranch {
    std::vector<int> outcomes;
    std::vector<StateVector::Amplitude> amps;
};

// (I + outcome*p)/2 on raw amplitudes, without renormalizing.
std::vector<StateVector::Amplitude> project(const PauliString& p, int outcome,
                                            const std::vector<StateVector::Amplitude>& amps,
                                            std::size_t num_qubits) {
    const auto image = detail::apply_to_amplitudes(p, num_qubits, amps);
    std::vector<StateVector::Amplitude> out(amps.size());
    const double half = outcome > 0 ? 0.5 : -0.5;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        out[i] = 0.5 * amps[i] + half * image[i];
    }
    return out;
}

double squared_norm(const std::vector<StateVector::Amplitude>& amps) {
    double total = 0.0;
    for (const auto& a : amps) {
        total += std::norm(a);
    }
    return total;
}

int atom_sign(const Atom& atom, const CommutingContext& ctx, const OutcomeTuple& t) {
    return t.value(ctx.index_of(atom.lhs));
}

}  // namespace

OutcomeTuple::OutcomeTuple(std::vector<int> values) : values_(std::move(values)) {
    for (int v : values_) {
        if (v != 1 && v != -1) {
            throw Error("outcome values must be +1 or -1");
        }
    }
}

std::string OutcomeTuple::str() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) {
            out += " ";
        }
        out += values_[i] > 0 ? "+1" : "-1";
    }
    return out;
}

bool operator<(const OutcomeTuple& a, const OutcomeTuple& b) {
    // +1 ranks before -1, then lexicographic.
    const std::size_t n = std::min(a.values_.size(), b.values_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ra = a.values_[i] > 0 ? 0 : 1;
        const int rb = b.values_[i] > 0 ? 0 : 1;
        if (ra != rb) {
            return ra < rb;
        }
    }
    return a.values_.size() < b.values_.size();
}

CommutingContext::CommutingContext(std::vector<PauliString> observables,
                                   std::vector<std::string> labels)
    : observables_(std::move(observables)), labels_(std::move(labels)) {
    if (observables_.empty()) {
        throw Error("a context needs at least one observable");
    }
    if (labels_.size() != observables_.size()) {
        throw SizeMismatchError("context has " + std::to_string(observables_.size()) +
                                " observables but " + std::to_string(labels_.size()) +
                                " labels");
    }
    const std::size_t n = observables_.front().num_qubits();
    for (std::size_t i = 0; i < observables_.size(); ++i) {
        if (observables_[i].num_qubits() != n) {
            throw SizeMismatchError("context observables span different registers");
        }
        if (observables_[i].is_identity()) {
            throw Error("observable '" + labels_[i] + "' acts as the identity");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (labels_[j] == labels_[i]) {
                throw Error("duplicate context label '" + labels_[i] + "'");
            }
        }
    }
    for (std::size_t i = 0; i < observables_.size(); ++i) {
        for (std::size_t j = i + 1; j < observables_.size(); ++j) {
            if (!commutes(observables_[i], observables_[j])) {
                throw NonCommutingError("observables '" + labels_[i] + "' (" +
                                            observables_[i].str() + ") and '" + labels_[j] +
                                            "' (" + observables_[j].str() +
                                            ") do not commute",
                                        i, j);
            }
        }
    }
}

std::size_t CommutingContext::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    throw UnknownLabelError("label '" + label + "' is not part of context " + str());
}

bool CommutingContext::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::string CommutingContext::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += labels_[i];
    }
    out += "}";
    return out;
}

CommutingContext make_context(std::vector<PauliString> observables,
                              std::vector<std::string> labels) {
    return CommutingContext(std::move(observables), std::move(labels));
}

Distribution::Distribution(std::vector<std::string> labels,
                           std::map<OutcomeTuple, double> entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {}

double Distribution::probability(const OutcomeTuple& t) const {
    const auto it = entries_.find(t);
    return it == entries_.end() ? 0.0 : it->second;
}

double Distribution::total() const {
    double sum = 0.0;
    for (const auto& [tuple, p] : entries_) {
        sum += p;
    }
    return sum;
}

double Distribution::event_probability(const EventPredicate& event) const {
    std::vector<std::size_t> lhs_index;
    std::vector<std::size_t> rhs_index;
    auto find_label = [this](const std::string& label) {
        const auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) {
            throw UnknownLabelError("event references '" + label +
                                    "' which is not measured in this distribution");
        }
        return static_cast<std::size_t>(it - labels_.begin());
    };
    for (const Atom& atom : event.atoms()) {
        lhs_index.push_back(find_label(atom.lhs));
        rhs_index.push_back(atom.rhs_label ? find_label(*atom.rhs_label) : 0);
    }
    double mass = 0.0;
    for (const auto& [tuple, p] : entries_) {
        bool ok = true;
        for (std::size_t k = 0; k < event.atoms().size() && ok; ++k) {
            const Atom& atom = event.atoms()[k];
            const int lhs = tuple.value(lhs_index[k]);
            const int rhs = atom.rhs_label ? atom.sign * tuple.value(rhs_index[k]) : atom.sign;
            ok = lhs == rhs;
        }
        if (ok) {
            mass += p;
        }
    }
    return mass;
}

bool holds(const EventPredicate& event, const CommutingContext& ctx, const OutcomeTuple& t) {
    for (const Atom& atom : event.atoms()) {
        const int lhs = atom_sign(atom, ctx, t);
        int rhs = atom.sign;
        if (atom.rhs_label) {
            rhs = atom.sign * t.value(ctx.index_of(*atom.rhs_label));
        }
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

Distribution joint_distribution(const StateVector& s, const CommutingContext& ctx) {
    std::map<OutcomeTuple, double> entries;
    for (const MeasurementBranch& branch : enumerate_branches(s, ctx)) {
        entries[branch.outcomes] = branch.probability;
    }
    return Distribution(ctx.labels(), std::move(entries));
}

std::vector<MeasurementBranch> enumerate_branches(const StateVector& s,
                                                  const CommutingContext& ctx) {
    if (s.num_qubits() != ctx.num_qubits()) {
        throw SizeMismatchError("state and context span different registers");
    }
    std::vector<RawBranch> raw{{{}, s.amplitudes()}};
    for (const PauliString& p : ctx.observables()) {
        std::vector<RawBranch> next;
        next.reserve(raw.size() * 2);
        for (const RawBranch& branch : raw) {
            for (int outcome : {+1, -1}) {
                RawBranch child;
                child.outcomes = branch.outcomes;
                child.outcomes.push_back(outcome);
                child.amps = project(p, outcome, branch.amps, s.num_qubits());
                if (squared_norm(child.amps) > kTolerance) {
                    next.push_back(std::move(child));
                }
            }
        }
        raw = std::move(next);
    }
    std::vector<MeasurementBranch> branches;
    branches.reserve(raw.size());
    for (RawBranch& branch : raw) {
        const double p = squared_norm(branch.amps);
        branches.push_back(MeasurementBranch{
            OutcomeTuple(std::move(branch.outcomes)),
            StateVector::normalized(s.num_qubits(), std::move(branch.amps)), p});
    }
    std::sort(branches.begin(), branches.end(),
              [](const MeasurementBranch& a, const MeasurementBranch& b) {
                  return a.outcomes < b.outcomes;
              });
    return branches;
}

double conditional_probability(const StateVector& s, const CommutingContext& ctx,
                               const EventPredicate& target, const EventPredicate& given) {
    const Distribution dist = joint_distribution(s, ctx);
    const double p_given = dist.event_probability(given);
    if (p_given <= kTolerance) {
        throw ConditioningOnNullError("conditioning event '" + given.str() +
                                      "' has probability " + std::to_string(p_given));
    }
    std::vector<Atom> combined = target.atoms();
    combined.insert(combined.end(), given.atoms().begin(), given.atoms().end());
    const double p_both = dist.event_probability(
        EventPredicate(target.name() + " and " + given.name(), std::move(combined)));
    return p_both / p_given;
}

CollapseResult collapse(const StateVector& s, const PauliString& p, int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw Error("collapse outcome must be +1 or -1");
    }
    if (p.num_qubits() != s.num_qubits()) {
        throw SizeMismatchError("state and observable span different registers");
    }
    const StateVector image = apply(p, s);
    std::vector<StateVector::Amplitude> amps(s.dimension());
    const double half = outcome > 0 ? 0.5 : -0.5;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        amps[i] = 0.5 * s.amplitudes()[i] + half * image.amplitudes()[i];
    }
    const double probability = squared_norm(amps);
    if (probability <= kTolerance) {
        throw ZeroProbabilityBranchError("outcome " + std::string(outcome > 0 ? "+1" : "-1") +
                                         " of " + p.str() + " has zero probability");
    }
    return CollapseResult{StateVector::normalized(s.num_qubits(), std::move(amps)),
                          probability};
}

std::map<OutcomeTuple, std::uint64_t> sample_outcomes(const StateVector& s,
                                                      const CommutingContext& ctx,
                                                      std::uint64_t n, std::uint64_t seed) {
    if (n == 0) {
        throw Error("sample count must be at least 1");
    }
    const Distribution dist = joint_distribution(s, ctx);
    std::vector<const OutcomeTuple*> tuples;
    std::vector<double> cdf;
    tuples.reserve(dist.entries().size());
    cdf.reserve(dist.entries().size());
    double acc = 0.0;
    for (const auto& [tuple, p] : dist.entries()) {
        acc += p;
        tuples.push_back(&tuple);
        cdf.push_back(acc);
    }
    std::mt19937_64 gen(seed);
    std::map<OutcomeTuple, std::uint64_t> counts;
    for (std::uint64_t draw = 0; draw < n; ++draw) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        ++counts[*tuples[idx]];
    }
    return counts;
}

}  // namespace qnl
