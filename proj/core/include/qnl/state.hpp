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

#include <complex>
#include <cstddef>
#include <vector>

#include "qnl/errors.hpp"
#include "qnl/pauli.hpp"

namespace qnl {

/// Absolute tolerance used for normalization and probability comparisons.
/// Every probability handled here is a dyadic rational, so this is loose.
inline constexpr double kTolerance = 1e-12;

/// Normalized complex amplitude vector over the computational basis.
///
/// Qubit 0 is the most significant bit of the basis index, so the amplitude
/// of |b0 b1 ... b(n-1)> sits at index b0*2^(n-1) + ... + b(n-1). Instances
/// are immutable values; every operation returns a fresh state.
class StateVector {
  public:
    using Amplitude = std::complex<double>;

    /// Requires amps.size() == 2^num_qubits and unit norm within kTolerance.
    StateVector(std::size_t num_qubits, std::vector<Amplitude> amps);

    /// Scales an arbitrary nonzero amplitude vector to unit norm.
    static StateVector normalized(std::size_t num_qubits, std::vector<Amplitude> amps);

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    Amplitude amplitude(std::size_t basis_index) const;

    friend bool operator==(const StateVector&, const StateVector&) = default;

  private:
    std::size_t num_qubits_;
    std::vector<Amplitude> amps_;
};

/// |bits[0] bits[1] ... > with unit amplitude on that basis vector.
StateVector basis_state(std::size_t num_qubits, const std::vector<int>& bits);

/// The two-qubit singlet (|01> - |10>)/sqrt(2).
StateVector singlet_pair();

/// Tensor product; `left` occupies the lower-numbered qubit positions.
StateVector tensor(const StateVector& left, const StateVector& right);

/// <a|b> with the conjugate on `a`.
std::complex<double> inner_product(const StateVector& a, const StateVector& b);

/// p|s> computed as a basis permutation with phase tracking. No matrix of
/// dimension 2^n x 2^n is ever materialized.
StateVector apply(const PauliString& p, const StateVector& s);

/// <s|p|s>. Real for any signed Pauli string; returns the real part.
double expectation(const StateVector& s, const PauliString& p);

/// True when every amplitude of a and b agrees within kTolerance.
bool approx_equal(const StateVector& a, const StateVector& b, double tol = kTolerance);

namespace detail {

/// Pauli action on a raw (possibly unnormalized) amplitude vector. Shared
/// by apply() and the projector chains in the measurement module.
std::vector<StateVector::Amplitude> apply_to_amplitudes(
    const PauliString& p, std::size_t num_qubits,
    const std::vector<StateVector::Amplitude>& amps);

}  // namespace detail

}  // namespace qnl
