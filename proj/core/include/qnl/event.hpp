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
#include <string>
#include <string_view>
#include <vector>

namespace qnl {

/// One conjunct of an event. Either fixes an observable's outcome
/// ("A1A3=+1") or relates two observables' outcomes ("B2=B4", "a1=-A3").
struct Atom {
    std::string lhs;
    std::optional<std::string> rhs_label;  // set for equality atoms
    int sign = +1;  // value atoms: the outcome; equality atoms: lhs == sign*rhs

    std::string str() const;
    friend bool operator==(const Atom&, const Atom&) = default;
};

/// Conjunction of atoms over the outcome labels of one commuting context.
class EventPredicate {
  public:
    EventPredicate() = default;
    EventPredicate(std::string name, std::vector<Atom> atoms);

    /// Parses a comma-separated atom list: "A1A3=+1,B2=B4,a1=-A3".
    static EventPredicate parse(std::string_view spec);
    static EventPredicate parse(std::string name, std::string_view spec);

    const std::string& name() const { return name_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    /// Labels in first-occurrence order, deduplicated.
    std::vector<std::string> referenced_labels() const;

    std::string str() const;

    friend bool operator==(const EventPredicate&, const EventPredicate&) = default;

  private:
    std::string name_;
    std::vector<Atom> atoms_;
};

}  // namespace qnl
