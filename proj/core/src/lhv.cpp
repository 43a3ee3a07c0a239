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

#include "qnl/lhv.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <utility>

#include "qnl/errors.hpp"

namespace qnl {

namespace {

constexpr std::size_t kMaxQuantities = 24;

std::string join_terms(const std::vector<ProductTerm>& terms, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += terms[i].str();
    }
    return out;
}

// A term compiled against the sorted quantity list: the product of the
// masked quantities must equal `value`.
struct CompiledTerm {
    std::uint32_t mask = 0;
    int value = +1;
};

struct CompiledConstraint {
    std::vector<CompiledTerm> antecedent;
    std::vector<CompiledTerm> consequent;
    bool negated = false;
};

int term_product(std::uint32_t assignment_bits, std::uint32_t mask) {
    // Bit set means the quantity is -1.
    return std::popcount(assignment_bits & mask) % 2 == 0 ? +1 : -1;
}

bool terms_hold(std::uint32_t bits, const std::vector<CompiledTerm>& terms) {
    for (const CompiledTerm& t : terms) {
        if (term_product(bits, t.mask) != t.value) {
            return false;
        }
    }
    return true;
}

bool constraint_holds(std::uint32_t bits, const CompiledConstraint& c) {
    if (!terms_hold(bits, c.antecedent)) {
        return true;
    }
    const bool consequent = terms_hold(bits, c.consequent);
    return c.negated ? !consequent : consequent;
}

CompiledTerm compile_term(const ProductTerm& term, const std::vector<std::string>& sorted) {
    CompiledTerm out;
    out.value = term.value;
    for (const std::string& name : term.names) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), name);
        if (it == sorted.end() || *it != name) {
            throw UnknownLabelError("constraint references unknown quantity '" + name + "'");
        }
        // Repeated names square away: +/-1 values cancel pairwise.
        out.mask ^= std::uint32_t{1} << (sorted.size() - 1 -
                                         static_cast<std::size_t>(it - sorted.begin()));
    }
    return out;
}

std::vector<CompiledConstraint> compile_all(std::span<const Constraint> constraints,
                                            const std::optional<Constraint>& event,
                                            const std::vector<std::string>& sorted) {
    std::vector<CompiledConstraint> out;
    auto compile_one = [&sorted](const Constraint& c) {
        CompiledConstraint cc;
        cc.negated = c.negated;
        for (const ProductTerm& t : c.antecedent) {
            cc.antecedent.push_back(compile_term(t, sorted));
        }
        for (const ProductTerm& t : c.consequent) {
            cc.consequent.push_back(compile_term(t, sorted));
        }
        return cc;
    };
    for (const Constraint& c : constraints) {
        out.push_back(compile_one(c));
    }
    if (event) {
        out.push_back(compile_one(*event));
    }
    return out;
}

std::vector<std::string> sorted_quantities(const std::vector<std::string>& quantities) {
    if (quantities.empty()) {
        throw Error("the quantity list is empty");
    }
    if (quantities.size() > kMaxQuantities) {
        throw TooManyQuantitiesError("exhaustive search over " +
                                     std::to_string(quantities.size()) +
                                     " quantities exceeds the bound of " +
                                     std::to_string(kMaxQuantities));
    }
    std::vector<std::string> sorted = quantities;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("duplicate quantity name in the quantity list");
    }
    return sorted;
}

Assignment assignment_from_bits(std::uint32_t bits, const std::vector<std::string>& sorted) {
    Assignment a;
    a.values.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const bool negative = (bits >> (sorted.size() - 1 - i)) & 1u;
        a.values.emplace_back(sorted[i], negative ? -1 : +1);
    }
    return a;
}

bool satisfiable(const std::vector<std::string>& sorted,
                 const std::vector<CompiledConstraint>& compiled) {
    const std::uint64_t total = std::uint64_t{1} << sorted.size();
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        bool ok = true;
        for (const CompiledConstraint& c : compiled) {
            if (!constraint_holds(static_cast<std::uint32_t>(bits), c)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

// Parity facts over GF(2) with signs: each row says "the product of the
// masked quantities equals sign". Used to derive a readable clash.
class ParityFacts {
  public:
    // Reduces a mask against the pivots; returns {residual, sign of the
    // eliminated part}.
    std::pair<std::uint32_t, int> reduce(std::uint32_t mask) const {
        int sign = +1;
        for (const auto& [pivot_mask, pivot_sign] : rows_) {
            const std::uint32_t high = std::uint32_t{1} << (31 - std::countl_zero(pivot_mask));
            if (mask & high) {
                mask ^= pivot_mask;
                sign *= pivot_sign;
            }
        }
        return {mask, sign};
    }

    // Returns +1/-1 when the term's value is determined, 0 when free.
    int status(const CompiledTerm& term) const {
        const auto [residual, sign] = reduce(term.mask);
        if (residual != 0) {
            return 0;
        }
        return sign;
    }

    // Inserts a fact; returns false if it contradicts the span.
    bool insert(std::uint32_t mask, int sign) {
        auto [residual, acc] = reduce(mask);
        const int residual_sign = sign * acc;
        if (residual == 0) {
            return residual_sign == +1;
        }
        rows_.emplace_back(residual, residual_sign);
        std::sort(rows_.begin(), rows_.end(), [](const auto& a, const auto& b) {
            return a.first > b.first;
        });
        return true;
    }

  private:
    std::vector<std::pair<std::uint32_t, int>> rows_;
};

std::string term_value_str(int value) {
    return value > 0 ? "+1" : "-1";
}

}  // namespace

std::string Constraint::str() const {
    std::string out;
    if (!antecedent.empty()) {
        out += join_terms(antecedent, " & ");
        out += " => ";
    }
    if (negated) {
        out += "not(" + join_terms(consequent, " & ") + ")";
    } else {
        out += join_terms(consequent, " & ");
    }
    return out;
}

std::string Constraint::context_tag() const {
    std::string out = "{";
    for (std::size_t i = 0; i < context_labels.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += context_labels[i];
    }
    out += "}";
    return out;
}

std::string Assignment::str() const {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += " ";
        }
        out += values[i].first + "=" + term_value_str(values[i].second);
    }
    return out;
}

namespace {

ProductTerm term_from_atom(const Scenario& scenario, const Atom& atom) {
    ProductTerm term;
    term.display = atom.str();
    term.value = atom.sign;
    for (const std::string& name : scenario.constituents_of(atom.lhs)) {
        term.names.push_back(name);
    }
    if (atom.rhs_label) {
        for (const std::string& name : scenario.constituents_of(*atom.rhs_label)) {
            term.names.push_back(name);
        }
    }
    return term;
}

std::vector<std::string> row_context_labels(const PredictionRow& row) {
    std::vector<std::string> labels = row.target.referenced_labels();
    if (row.given) {
        for (const std::string& label : row.given->referenced_labels()) {
            if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
                labels.push_back(label);
            }
        }
    }
    return labels;
}

}  // namespace

ConstraintSet constraints_from_predictions(const Scenario& scenario,
                                           std::span<const PredictionRow> rows) {
    constexpr double tol = 1e-12;
    ConstraintSet set;
    for (const PredictionRow& row : rows) {
        const bool certain = std::abs(row.probability - 1.0) <= tol;
        const bool impossible = std::abs(row.probability) <= tol;
        if (!certain && !impossible) {
            continue;
        }
        Constraint c;
        c.kind = Constraint::Kind::Implication;
        c.name = row.name;
        c.negated = impossible;
        c.context_labels = row_context_labels(row);
        if (row.given) {
            for (const Atom& atom : row.given->atoms()) {
                c.antecedent.push_back(term_from_atom(scenario, atom));
            }
        }
        for (const Atom& atom : row.target.atoms()) {
            c.consequent.push_back(term_from_atom(scenario, atom));
        }
        set.constraints.push_back(std::move(c));
    }
    return set;
}

Constraint event_constraint(const Scenario& scenario, std::string_view spec,
                            std::string name) {
    const EventPredicate parsed = EventPredicate::parse(std::string(name), spec);
    Constraint c;
    c.kind = Constraint::Kind::Event;
    c.name = std::move(name);
    auto tag_label = [&c](const std::string& label) {
        if (std::find(c.context_labels.begin(), c.context_labels.end(), label) ==
            c.context_labels.end()) {
            c.context_labels.push_back(label);
        }
    };
    for (const Atom& atom : parsed.atoms()) {
        ProductTerm term;
        term.display = atom.str();
        term.value = atom.sign;
        auto add_names = [&scenario, &term, &tag_label](const std::string& token) {
            if (scenario.has_label(token)) {
                tag_label(token);
                for (const std::string& q : scenario.constituents_of(token)) {
                    term.names.push_back(q);
                }
                return;
            }
            // Tokenize letter+digit quantity names, e.g. "A1A3" -> A1, A3.
            std::size_t pos = 0;
            while (pos < token.size()) {
                std::size_t start = pos;
                while (pos < token.size() &&
                       std::isalpha(static_cast<unsigned char>(token[pos]))) {
                    ++pos;
                }
                while (pos < token.size() &&
                       std::isdigit(static_cast<unsigned char>(token[pos]))) {
                    ++pos;
                }
                if (pos == start || !std::isalpha(static_cast<unsigned char>(token[start]))) {
                    throw ParseError("cannot resolve '" + token +
                                     "' against the scenario's quantities");
                }
                std::string quantity = token.substr(start, pos - start);
                tag_label(quantity);
                term.names.push_back(std::move(quantity));
            }
        };
        add_names(atom.lhs);
        if (atom.rhs_label) {
            add_names(*atom.rhs_label);
        }
        c.consequent.push_back(std::move(term));
    }
    return c;
}

ModelReport find_models(const std::vector<std::string>& quantities,
                        std::span<const Constraint> constraints,
                        const std::optional<Constraint>& event) {
    const std::vector<std::string> sorted = sorted_quantities(quantities);
    const std::vector<CompiledConstraint> compiled = compile_all(constraints, event, sorted);

    ModelReport report;
    const std::uint64_t total = std::uint64_t{1} << sorted.size();
    report.searched = total;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        bool ok = true;
        for (const CompiledConstraint& c : compiled) {
            if (!constraint_holds(static_cast<std::uint32_t>(bits), c)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            report.models.push_back(assignment_from_bits(static_cast<std::uint32_t>(bits),
                                                         sorted));
        }
    }
    report.contradiction = report.models.empty();
    for (const Constraint& c : constraints) {
        report.context_tags.push_back(c.context_tag());
    }
    if (event) {
        report.context_tags.push_back(event->context_tag());
    }
    return report;
}

bool mixes_incompatible_contexts(const Scenario& scenario,
                                 std::span<const Constraint> constraints,
                                 const std::optional<Constraint>& event) {
    std::vector<const std::vector<std::string>*> tags;
    for (const Constraint& c : constraints) {
        tags.push_back(&c.context_labels);
    }
    if (event) {
        tags.push_back(&event->context_labels);
    }
    for (std::size_t i = 0; i < tags.size(); ++i) {
        for (std::size_t j = i + 1; j < tags.size(); ++j) {
            for (const std::string& a : *tags[i]) {
                for (const std::string& b : *tags[j]) {
                    if (a != b &&
                        !commutes(scenario.observable(a), scenario.observable(b))) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

namespace {

std::vector<std::string> derive_trace(const std::vector<Constraint>& core,
                                      const std::vector<std::string>& sorted) {
    std::vector<std::string> trace;
    ParityFacts facts;

    struct Item {
        const Constraint* constraint;
        std::vector<CompiledTerm> antecedent;
        std::vector<CompiledTerm> consequent;
        bool done = false;
    };
    std::vector<Item> items;
    for (const Constraint& c : core) {
        Item item{&c, {}, {}, false};
        for (const ProductTerm& t : c.antecedent) {
            item.antecedent.push_back(compile_term(t, sorted));
        }
        for (const ProductTerm& t : c.consequent) {
            item.consequent.push_back(compile_term(t, sorted));
        }
        items.push_back(std::move(item));
    }

    auto clash_line = [&trace](const std::string& what) {
        trace.push_back("contradiction: " + what);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (Item& item : items) {
            if (item.done) {
                continue;
            }
            const Constraint& c = *item.constraint;

            // The antecedent must be fully entailed before the rule fires.
            bool fires = true;
            for (const CompiledTerm& t : item.antecedent) {
                if (facts.status(t) != t.value) {
                    fires = false;
                    break;
                }
            }
            if (!fires) {
                continue;
            }

            if (!c.negated) {
                for (std::size_t k = 0; k < item.consequent.size(); ++k) {
                    const CompiledTerm& t = item.consequent[k];
                    const int known = facts.status(t);
                    if (known == t.value) {
                        continue;
                    }
                    const std::string source =
                        c.antecedent.empty()
                            ? c.name + " fixes " + c.consequent[k].str()
                            : c.name + ": " + join_terms(c.antecedent, " & ") +
                                  " holds, forcing " + c.consequent[k].str();
                    if (known != 0) {
                        clash_line(c.consequent[k].str() + " is required by '" + c.name +
                                   "' but the facts so far force the product to " +
                                   term_value_str(known));
                        return trace;
                    }
                    facts.insert(t.mask, t.value);
                    trace.push_back(source);
                    progress = true;
                }
                item.done = true;
            } else {
                // not(T1 & ... & Tm): once all but one conjunct is forced
                // true, the last one is forced false; all true is a clash.
                std::size_t unknown_index = item.consequent.size();
                std::size_t unknown_count = 0;
                bool some_false = false;
                for (std::size_t k = 0; k < item.consequent.size(); ++k) {
                    const int known = facts.status(item.consequent[k]);
                    if (known == 0) {
                        unknown_index = k;
                        ++unknown_count;
                    } else if (known != item.consequent[k].value) {
                        some_false = true;
                    }
                }
                if (some_false) {
                    item.done = true;
                    continue;
                }
                if (unknown_count == 0) {
                    clash_line("'" + c.name + "' forbids " +
                               join_terms(c.consequent, " & ") +
                               " but every conjunct is forced");
                    return trace;
                }
                if (unknown_count == 1) {
                    const CompiledTerm& t = item.consequent[unknown_index];
                    facts.insert(t.mask, -t.value);
                    trace.push_back(c.name + " forbids " + join_terms(c.consequent, " & ") +
                                    "; the other conjuncts hold, so " +
                                    c.consequent[unknown_index].str() + " must fail");
                    item.done = true;
                    progress = true;
                }
            }
        }
    }
    trace.push_back(
        "no step-by-step derivation found; the core is verified unsatisfiable by "
        "exhaustive search");
    return trace;
}

}  // namespace

ContradictionCore explain_contradiction(const ModelReport& report,
                                        const std::vector<std::string>& quantities,
                                        std::span<const Constraint> constraints,
                                        const std::optional<Constraint>& event) {
    if (!report.contradiction) {
        throw NotAContradictionError("the constraint set admits " +
                                     std::to_string(report.models.size()) + " models");
    }
    const std::vector<std::string> sorted = sorted_quantities(quantities);

    std::vector<Constraint> items(constraints.begin(), constraints.end());
    if (event) {
        items.push_back(*event);
    }

    // Size-ordered subset search: the first unsatisfiable subset found has
    // minimum cardinality, so every proper subset is satisfiable.
    std::vector<std::size_t> best;
    const std::size_t n = items.size();
    for (std::size_t size = 1; size <= n && best.empty(); ++size) {
        // Lexicographic combinations of `size` indices out of n.
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) {
            idx[i] = i;
        }
        auto advance = [&idx, n, size]() -> bool {
            std::size_t k = size;
            while (k-- > 0) {
                if (idx[k] != k + n - size) {
                    ++idx[k];
                    for (std::size_t j = k + 1; j < size; ++j) {
                        idx[j] = idx[j - 1] + 1;
                    }
                    return true;
                }
            }
            return false;
        };
        do {
            std::vector<Constraint> subset;
            for (std::size_t i : idx) {
                subset.push_back(items[i]);
            }
            if (!satisfiable(sorted, compile_all(subset, std::nullopt, sorted))) {
                best = idx;
                break;
            }
        } while (advance());
    }
    if (best.empty()) {
        throw Error("no unsatisfiable subset found despite an empty model list");
    }

    ContradictionCore result;
    for (std::size_t i : best) {
        result.core.push_back(items[i]);
    }

    // Re-verify the core by full enumeration, and each proper subset by
    // dropping one element.
    const ModelReport check = find_models(quantities, result.core, std::nullopt);
    if (!check.contradiction) {
        throw Error("internal error: extracted core is satisfiable");
    }
    for (std::size_t drop = 0; drop < result.core.size(); ++drop) {
        std::vector<Constraint> reduced;
        for (std::size_t i = 0; i < result.core.size(); ++i) {
            if (i != drop) {
                reduced.push_back(result.core[i]);
            }
        }
        if (!reduced.empty() &&
            !satisfiable(sorted, compile_all(reduced, std::nullopt, sorted))) {
            throw Error("internal error: core is not minimal");
        }
    }

    result.trace = derive_trace(result.core, sorted);
    return result;
}

LhvRun run_lhv_case(const Scenario& scenario, const LhvCase& lhv_case,
                    const std::optional<std::string>& event_override) {
    LhvRun run;
    run.case_name = lhv_case.name;
    run.quantities = scenario.quantity_names();

    std::vector<PredictionRow> rows;
    for (std::size_t idx : lhv_case.row_indices) {
        rows.push_back(scenario.predictions().rows[idx]);
    }
    run.constraints = constraints_from_predictions(scenario, rows).constraints;

    std::optional<std::string> event_spec = event_override ? event_override : lhv_case.event;
    if (event_spec) {
        run.event = event_constraint(scenario, *event_spec);
    }
    if (!event_override) {
        run.expected_models = lhv_case.expected_models;
    }

    run.report = find_models(run.quantities, run.constraints, run.event);
    run.report.mixed_contexts =
        mixes_incompatible_contexts(scenario, run.constraints, run.event);
    if (run.report.contradiction) {
        run.core = explain_contradiction(run.report, run.quantities, run.constraints,
                                         run.event);
    }
    return run;
}

}  // namespace qnl
