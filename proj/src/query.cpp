#include "qlp/query.hpp"

#include <cmath>

#include "qlp/sampling.hpp"

namespace qlp {

StateVector apply_query(const NormalizedInput &input, const QueryTarget &target, double tau) {
    if (input.size() != target.size()) {
        throw DimensionError("input has " + std::to_string(input.size()) +
                             " entries but the query target has " +
                             std::to_string(target.size()));
    }
    // Ry(a) Ry(b) = Ry(a + b): each qubit collapses to a single rotation.
    std::vector<QubitAmplitudes> factors;
    factors.reserve(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double half =
            (encoding_angle(input[i], tau).radians + query_angle(target[i], tau).radians) / 2.0;
        factors.push_back({std::cos(half), std::sin(half)});
    }
    return product_state(factors);
}

ZeroGroupSummary zero_group_probabilities(std::span<const double> probs, std::size_t num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits ||
        probs.size() != (std::size_t{1} << num_qubits)) {
        throw DimensionError("probability vector of length " + std::to_string(probs.size()) +
                             " does not match " + std::to_string(num_qubits) + " qubits");
    }
    validate_probabilities(probs);
    ZeroGroupSummary summary{std::vector<double>(num_qubits + 1, 0.0)};
    for (std::size_t b = 0; b < probs.size(); ++b) {
        summary.by_zero_count[zero_count(b, num_qubits)] += probs[b];
    }
    return summary;
}

double euclidean_distance(const RawFrame &a, const RawFrame &b) {
    if (a.size() != b.size()) {
        throw DimensionError("cannot compare frames of length " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto d = static_cast<double>(a.readings[i] - b.readings[i]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

} // namespace qlp
