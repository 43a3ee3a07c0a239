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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnl {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Register sizes (qubit counts) of two operands disagree.
class SizeMismatchError : public Error {
  public:
    using Error::Error;
};

/// A symbolic Pauli product picked up a +/-i phase, so the result is not
/// Hermitian and cannot be stored as an observable.
class NonHermitianProductError : public Error {
  public:
    using Error::Error;
};

/// Two observables placed in the same measurement context fail to commute.
class NonCommutingError : public Error {
  public:
    NonCommutingError(const std::string& what, std::size_t first, std::size_t second)
        : Error(what), first_index(first), second_index(second) {}

    std::size_t first_index;
    std::size_t second_index;
};

/// The conditioning event has probability below the null threshold.
class ConditioningOnNullError : public Error {
  public:
    using Error::Error;
};

/// A projective branch carries no probability mass.
class ZeroProbabilityBranchError : public Error {
  public:
    using Error::Error;
};

/// An event or constraint references a label that the context or the
/// quantity list does not define.
class UnknownLabelError : public Error {
  public:
    using Error::Error;
};

/// Exhaustive assignment search was asked for more quantities than the
/// enumeration bound allows.
class TooManyQuantitiesError : public Error {
  public:
    using Error::Error;
};

/// explain_contradiction was handed a report that has models.
class NotAContradictionError : public Error {
  public:
    using Error::Error;
};

/// A prediction row references observables that cannot form a single
/// commuting context.
class ContextConstructionError : public Error {
  public:
    using Error::Error;
};

/// Malformed textual input (event specs, Pauli strings, CLI values).
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace qnl
