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

#include "qnl/pauli.hpp"

#include <array>

namespace qnl {

namespace {

// i-power picked up by the single-qubit product a*b, indexed [a][b].
// X*Y = iZ, Y*Z = iX, Z*X = iY; the reversed orders give -i (exponent 3).
constexpr std::array<std::array<int, 4>, 4> kPhaseExponent = {{
    // I  X  Y  Z
    {0, 0, 0, 0},  // I
    {0, 0, 1, 3},  // X
    {0, 3, 0, 1},  // Y
    {0, 1, 3, 0},  // Z
}};

constexpr Axis compose_axis(Axis a, Axis b) {
    // (x,z) bit coordinates with x in the low bit: I=00, X=01, Y=11, Z=10.
    // The product axis is the componentwise XOR.
    constexpr std::array<std::uint8_t, 4> to_bits = {0b00, 0b01, 0b11, 0b10};
    const std::uint8_t bits =
        to_bits[static_cast<std::size_t>(a)] ^ to_bits[static_cast<std::size_t>(b)];
    switch (bits) {
        case 0b00: return Axis::I;
        case 0b01: return Axis::X;
        case 0b11: return Axis::Y;
        default: return Axis::Z;
    }
}

}  // namespace

char axis_to_char(Axis axis) {
    switch (axis) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw Error("invalid Axis value");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'I': return Axis::I;
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default:
            throw ParseError(std::string("invalid Pauli axis character '") + c + "'");
    }
}

PauliString::PauliString(int sign, std::vector<Axis> axes)
    : sign_(sign), axes_(std::move(axes)) {
    if (sign_ != 1 && sign_ != -1) {
        throw Error("PauliString sign must be +1 or -1");
    }
    if (axes_.empty()) {
        throw Error("PauliString needs at least one qubit");
    }
}

PauliString PauliString::identity(std::size_t num_qubits) {
    return PauliString(1, std::vector<Axis>(num_qubits, Axis::I));
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, Axis axis) {
    if (qubit >= num_qubits) {
        throw SizeMismatchError("qubit index " + std::to_string(qubit) +
                                " out of range for register of " +
                                std::to_string(num_qubits));
    }
    std::vector<Axis> axes(num_qubits, Axis::I);
    axes[qubit] = axis;
    return PauliString(1, std::move(axes));
}

PauliString PauliString::from_sites(
    std::size_t num_qubits, std::initializer_list<std::pair<std::size_t, Axis>> sites) {
    std::vector<Axis> axes(num_qubits, Axis::I);
    for (const auto& [qubit, axis] : sites) {
        if (qubit >= num_qubits) {
            throw SizeMismatchError("qubit index " + std::to_string(qubit) +
                                    " out of range for register of " +
                                    std::to_string(num_qubits));
        }
        axes[qubit] = axis;
    }
    return PauliString(1, std::move(axes));
}

PauliString PauliString::parse(std::string_view text) {
    int sign = 1;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        sign = text.front() == '-' ? -1 : 1;
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw ParseError("empty Pauli string");
    }
    std::vector<Axis> axes;
    axes.reserve(text.size());
    for (char c : text) {
        axes.push_back(axis_from_char(c));
    }
    return PauliString(sign, std::move(axes));
}

Axis PauliString::axis(std::size_t qubit) const {
    if (qubit >= axes_.size()) {
        throw SizeMismatchError("qubit index out of range");
    }
    return axes_[qubit];
}

std::size_t PauliString::weight() const {
    std::size_t w = 0;
    for (Axis a : axes_) {
        if (a != Axis::I) {
            ++w;
        }
    }
    return w;
}

std::string PauliString::str() const {
    std::string out;
    if (sign_ < 0) {
        out.push_back('-');
    }
    for (Axis a : axes_) {
        out.push_back(axis_to_char(a));
    }
    return out;
}

PauliString product(const PauliString& left, const PauliString& right) {
    if (left.num_qubits() != right.num_qubits()) {
        throw SizeMismatchError("Pauli product of " + std::to_string(left.num_qubits()) +
                                "-qubit and " + std::to_string(right.num_qubits()) +
                                "-qubit strings");
    }
    int exponent = 0;  // power of i, mod 4
    if (left.sign() < 0) {
        exponent += 2;
    }
    if (right.sign() < 0) {
        exponent += 2;
    }
    std::vector<Axis> axes(left.num_qubits());
    for (std::size_t q = 0; q < axes.size(); ++q) {
        const Axis a = left.axes()[q];
        const Axis b = right.axes()[q];
        exponent += kPhaseExponent[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        axes[q] = compose_axis(a, b);
    }
    exponent %= 4;
    if (exponent == 1 || exponent == 3) {
        throw NonHermitianProductError("product " + left.str() + " * " + right.str() +
                                       " carries a +/-i phase and is not Hermitian");
    }
    return PauliString(exponent == 0 ? 1 : -1, std::move(axes));
}

PauliString product(const std::vector<PauliString>& factors) {
    if (factors.empty()) {
        throw Error("empty Pauli product");
    }
    PauliString acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = product(acc, factors[i]);
    }
    return acc;
}

bool commutes(const PauliString& p, const PauliString& q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw SizeMismatchError("commutation of strings over different registers");
    }
    std::size_t anticommuting_sites = 0;
    for (std::size_t k = 0; k < p.num_qubits(); ++k) {
        const Axis a = p.axes()[k];
        const Axis b = q.axes()[k];
        if (a != Axis::I && b != Axis::I && a != b) {
            ++anticommuting_sites;
        }
    }
    return anticommuting_sites % 2 == 0;
}

}  // namespace qnl
