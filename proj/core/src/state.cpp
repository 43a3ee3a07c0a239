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

#include "qnl/state.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

namespace qnl {

namespace {

constexpr std::size_t kMaxQubits = 24;

double squared_norm(const std::vector<StateVector::Amplitude>& amps) {
    double total = 0.0;
    for (const auto& a : amps) {
        total += std::norm(a);
    }
    return total;
}

void check_register_size(std::size_t num_qubits) {
    if (num_qubits == 0) {
        throw SizeMismatchError("register needs at least one qubit");
    }
    if (num_qubits > kMaxQubits) {
        throw SizeMismatchError("register of " + std::to_string(num_qubits) +
                                " qubits exceeds the " + std::to_string(kMaxQubits) +
                                "-qubit ceiling");
    }
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
    check_register_size(num_qubits_);
    const std::size_t dim = std::size_t{1} << num_qubits_;
    if (amps_.size() != dim) {
        throw SizeMismatchError("expected " + std::to_string(dim) + " amplitudes, got " +
                                std::to_string(amps_.size()));
    }
    if (std::abs(squared_norm(amps_) - 1.0) > kTolerance) {
        throw Error("amplitudes are not normalized; use StateVector::normalized");
    }
}

StateVector StateVector::normalized(std::size_t num_qubits, std::vector<Amplitude> amps) {
    check_register_size(num_qubits);
    const double n2 = squared_norm(amps);
    if (n2 <= kTolerance) {
        throw ZeroProbabilityBranchError("cannot normalize a zero vector");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& a : amps) {
        a *= scale;
    }
    return StateVector(num_qubits, std::move(amps));
}

StateVector::Amplitude StateVector::amplitude(std::size_t basis_index) const {
    if (basis_index >= amps_.size()) {
        throw SizeMismatchError("basis index out of range");
    }
    return amps_[basis_index];
}

StateVector basis_state(std::size_t num_qubits, const std::vector<int>& bits) {
    check_register_size(num_qubits);
    if (bits.size() != num_qubits) {
        throw SizeMismatchError("expected " + std::to_string(num_qubits) + " bits, got " +
                                std::to_string(bits.size()));
    }
    std::size_t index = 0;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        if (bits[q] != 0 && bits[q] != 1) {
            throw Error("basis bits must be 0 or 1");
        }
        index = (index << 1) | static_cast<std::size_t>(bits[q]);
    }
    std::vector<StateVector::Amplitude> amps(std::size_t{1} << num_qubits, 0.0);
    amps[index] = 1.0;
    return StateVector(num_qubits, std::move(amps));
}

StateVector singlet_pair() {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return StateVector(2, {0.0, inv_sqrt2, -inv_sqrt2, 0.0});
}

StateVector tensor(const StateVector& left, const StateVector& right) {
    const std::size_t n = left.num_qubits() + right.num_qubits();
    check_register_size(n);
    std::vector<StateVector::Amplitude> amps(std::size_t{1} << n);
    const std::size_t right_dim = right.dimension();
    for (std::size_t i = 0; i < left.dimension(); ++i) {
        for (std::size_t j = 0; j < right_dim; ++j) {
            amps[i * right_dim + j] = left.amplitudes()[i] * right.amplitudes()[j];
        }
    }
    return StateVector(n, std::move(amps));
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw SizeMismatchError("inner product of states over different registers");
    }
    std::complex<double> total = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        total += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    }
    return total;
}

namespace detail {

std::vector<StateVector::Amplitude> apply_to_amplitudes(
    const PauliString& p, std::size_t num_qubits,
    const std::vector<StateVector::Amplitude>& amps) {
    std::uint64_t flip_mask = 0;   // X and Y flip the basis bit
    std::uint64_t phase_mask = 0;  // Y and Z pick up (-1)^bit
    std::size_t y_count = 0;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (num_qubits - 1 - q);
        switch (p.axes()[q]) {
            case Axis::I: break;
            case Axis::X: flip_mask |= bit; break;
            case Axis::Y:
                flip_mask |= bit;
                phase_mask |= bit;
                ++y_count;
                break;
            case Axis::Z: phase_mask |= bit; break;
        }
    }
    // Per basis vector: X|b> = |1-b>, Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>.
    // The i factors collect into a global i^(#Y).
    constexpr std::complex<double> i_powers[4] = {
        {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const std::complex<double> global =
        static_cast<double>(p.sign()) * i_powers[y_count % 4];

    std::vector<StateVector::Amplitude> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const int parity = std::popcount(static_cast<std::uint64_t>(i) & phase_mask) & 1;
        const std::complex<double> phase = parity ? -global : global;
        out[i ^ flip_mask] = phase * amps[i];
    }
    return out;
}

}  // namespace detail

StateVector apply(const PauliString& p, const StateVector& s) {
    if (p.num_qubits() != s.num_qubits()) {
        throw SizeMismatchError("Pauli string over " + std::to_string(p.num_qubits()) +
                                " qubits applied to a " + std::to_string(s.num_qubits()) +
                                "-qubit state");
    }
    return StateVector(s.num_qubits(),
                       detail::apply_to_amplitudes(p, s.num_qubits(), s.amplitudes()));
}

double expectation(const StateVector& s, const PauliString& p) {
    return std::real(inner_product(s, apply(p, s)));
}

bool approx_equal(const StateVector& a, const StateVector& b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        if (std::abs(a.amplitudes()[i] - b.amplitudes()[i]) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace qnl
