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

#include "qnl/event.hpp"

#include <algorithm>
#include <utility>

#include "qnl/errors.hpp"

namespace qnl {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    return text;
}

Atom parse_atom(std::string_view token) {
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) {
        throw ParseError("event atom '" + std::string(token) + "' is missing '='");
    }
    const std::string lhs{trim(token.substr(0, eq))};
    std::string_view rhs = trim(token.substr(eq + 1));
    if (lhs.empty() || rhs.empty()) {
        throw ParseError("event atom '" + std::string(token) + "' has an empty side");
    }
    int sign = +1;
    if (rhs.front() == '+' || rhs.front() == '-') {
        sign = rhs.front() == '-' ? -1 : +1;
        rhs.remove_prefix(1);
        rhs = trim(rhs);
    }
    if (rhs == "1") {
        return Atom{lhs, std::nullopt, sign};
    }
    if (rhs.empty() || rhs.find_first_of("+-=,") != std::string_view::npos) {
        throw ParseError("event atom '" + std::string(token) +
                         "' must end in +1, -1, or an observable name");
    }
    return Atom{lhs, std::string(rhs), sign};
}

}  // namespace

std::string Atom::str() const {
    if (rhs_label) {
        return lhs + "=" + (sign < 0 ? "-" : "") + *rhs_label;
    }
    return lhs + (sign < 0 ? "=-1" : "=+1");
}

EventPredicate::EventPredicate(std::string name, std::vector<Atom> atoms)
    : name_(std::move(name)), atoms_(std::move(atoms)) {
    if (atoms_.empty()) {
        throw ParseError("event predicate needs at least one atom");
    }
}

EventPredicate EventPredicate::parse(std::string_view spec) {
    return parse(std::string(spec), spec);
}

EventPredicate EventPredicate::parse(std::string name, std::string_view spec) {
    std::vector<Atom> atoms;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto comma = spec.find(',', start);
        const auto end = comma == std::string_view::npos ? spec.size() : comma;
        const auto token = trim(spec.substr(start, end - start));
        if (token.empty()) {
            throw ParseError("empty atom in event spec '" + std::string(spec) + "'");
        }
        atoms.push_back(parse_atom(token));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return EventPredicate(std::move(name), std::move(atoms));
}

std::vector<std::string> EventPredicate::referenced_labels() const {
    std::vector<std::string> labels;
    auto add = [&labels](const std::string& l) {
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
            labels.push_back(l);
        }
    };
    for (const Atom& atom : atoms_) {
        add(atom.lhs);
        if (atom.rhs_label) {
            add(*atom.rhs_label);
        }
    }
    return labels;
}

std::string EventPredicate::str() const {
    std::string out;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += atoms_[i].str();
    }
    return out;
}

}  // namespace qnl
