#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qlp/sensor.hpp"
#include "qlp/state.hpp"

namespace qlp {

/**
 * Encodes `input` and applies the query operator Q(target), i.e.
 * Ry(-pi target_i / tau) after Ry(pi x_i / tau) on every qubit.
 *
 * Both rotations act on the same axis, so qubit i ends up in
 * Ry(pi (x_i - target_i) / tau)|0>. After the query |0...0> stands for
 * "the world matches the target"; amplitudes may be negative.
 */
StateVector apply_query(const NormalizedInput &input, const QueryTarget &target,
                        double tau = kDefaultTau);

/// Probability mass grouped by the number of zero bits in the outcome.
struct ZeroGroupSummary {
    /// by_zero_count[k] = total probability of outcomes with exactly k zero bits.
    std::vector<double> by_zero_count;

    [[nodiscard]] std::size_t num_qubits() const noexcept {
        return by_zero_count.empty() ? 0 : by_zero_count.size() - 1;
    }
    [[nodiscard]] double operator[](std::size_t zeros) const { return by_zero_count.at(zeros); }
};

/// probs must have length 2^num_qubits, be non-negative and sum to 1 within 1e-9.
ZeroGroupSummary zero_group_probabilities(std::span<const double> probs, std::size_t num_qubits);

/// Euclidean distance between raw (unnormalized) frames, in domain units.
double euclidean_distance(const RawFrame &a, const RawFrame &b);

} // namespace qlp
