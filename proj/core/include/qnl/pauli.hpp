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
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnl/errors.hpp"

namespace qnl {

/// Single-qubit Pauli axis.
enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_to_char(Axis axis);
Axis axis_from_char(char c);

/// A signed tensor product of single-qubit Pauli operators.
///
/// The sign is restricted to +/-1 so every PauliString is Hermitian with
/// eigenvalues +/-1 (identity strings excepted). Symbolic products that
/// would produce a +/-i phase are rejected instead of stored.
class PauliString {
  public:
    /// Builds sign * (axes[0] x axes[1] x ... ). Qubit 0 is the leftmost
    /// tensor factor.
    PauliString(int sign, std::vector<Axis> axes);

    static PauliString identity(std::size_t num_qubits);

    /// A single non-identity axis on one qubit of an otherwise-identity string.
    static PauliString single(std::size_t num_qubits, std::size_t qubit, Axis axis);

    /// Identity except at the given (qubit, axis) sites.
    static PauliString from_sites(std::size_t num_qubits,
                                  std::initializer_list<std::pair<std::size_t, Axis>> sites);

    /// Parses "ZIZI", "+XIXI" or "-YY". One character per qubit.
    static PauliString parse(std::string_view text);

    int sign() const { return sign_; }
    const std::vector<Axis>& axes() const { return axes_; }
    Axis axis(std::size_t qubit) const;
    std::size_t num_qubits() const { return axes_.size(); }

    /// Number of non-identity tensor factors.
    std::size_t weight() const;
    bool is_identity() const { return weight() == 0; }

    std::string str() const;

    friend bool operator==(const PauliString&, const PauliString&) = default;

  private:
    int sign_;
    std::vector<Axis> axes_;
};

/// Symbolic product left*right with phase tracking. Throws
/// NonHermitianProductError when the accumulated phase is +/-i.
PauliString product(const PauliString& left, const PauliString& right);

/// Product of a list of strings, folded left to right.
PauliString product(const std::vector<PauliString>& factors);

/// True iff p and q commute: the number of qubits where both act
/// non-trivially with different axes is even.
bool commutes(const PauliString& p, const PauliString& q);

}  // namespace qnl
