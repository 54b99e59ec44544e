#include "qlp/state.hpp"

#include <bit>
#include <numeric>

namespace qlp {
namespace {

void check_unit(double x, const char *what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " = " + std::to_string(x) + " is outside [0, 1]");
    }
}

void check_tau(double tau) {
    if (!(tau >= 1.0) || !std::isfinite(tau)) {
        throw DomainError("tau = " + std::to_string(tau) + " must be a finite value >= 1");
    }
}

} // namespace

RotationAngle encoding_angle(double x, double tau) {
    check_unit(x, "x");
    check_tau(tau);
    return {kPi * x / tau};
}

RotationAngle query_angle(double target, double tau) {
    check_unit(target, "target");
    check_tau(tau);
    return {-kPi * target / tau};
}

QubitAmplitudes qubit_amplitudes(double x, double tau) {
    const double half = encoding_angle(x, tau).radians / 2.0;
    return {std::cos(half), std::sin(half)};
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
        throw DimensionError("qubit count " + std::to_string(num_qubits) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (index >= dim) {
        throw DimensionError("basis index " + std::to_string(index) + " out of range for " +
                             std::to_string(num_qubits) + " qubits");
    }
    std::vector<double> amplitudes(dim, 0.0);
    amplitudes[index] = 1.0;
    return StateVector(num_qubits, std::move(amplitudes));
}

StateVector StateVector::from_amplitudes(std::vector<double> amplitudes, double norm_tolerance) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw DimensionError("amplitude count " + std::to_string(dim) +
                             " is not a power of two >= 2");
    }
    const auto num_qubits = static_cast<std::size_t>(std::countr_zero(dim));
    if (num_qubits > kMaxQubits) {
        throw DimensionError("state has more than " + std::to_string(kMaxQubits) + " qubits");
    }
    StateVector state(num_qubits, std::move(amplitudes));
    const double norm = state.norm_squared();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > norm_tolerance) {
        throw DomainError("state norm^2 = " + std::to_string(norm) + " differs from 1");
    }
    return state;
}

double StateVector::norm_squared() const noexcept {
    return std::transform_reduce(amplitudes_.begin(), amplitudes_.end(), amplitudes_.begin(), 0.0);
}

StateVector product_state(std::span<const QubitAmplitudes> factors) {
    if (factors.empty() || factors.size() > kMaxQubits) {
        throw DimensionError("qubit count " + std::to_string(factors.size()) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
    }
    // Kronecker product built one qubit at a time; qubit i+1 becomes bit i.
    std::vector<double> amplitudes(std::size_t{1} << factors.size(), 0.0);
    amplitudes[0] = 1.0;
    std::size_t filled = 1;
    for (const QubitAmplitudes &f : factors) {
        for (std::size_t b = 0; b < filled; ++b) {
            const double c = amplitudes[b];
            amplitudes[b] = c * f.zero;
            amplitudes[b + filled] = c * f.one;
        }
        filled *= 2;
    }
    return StateVector(factors.size(), std::move(amplitudes));
}

StateVector product_state(const NormalizedInput &input, double tau) {
    std::vector<QubitAmplitudes> factors;
    factors.reserve(input.size());
    for (double x : input.values()) {
        factors.push_back(qubit_amplitudes(x, tau));
    }
    return product_state(factors);
}

StateVector apply_ry(const StateVector &state, std::size_t qubit, RotationAngle angle) {
    if (qubit < 1 || qubit > state.num_qubits()) {
        throw DimensionError("qubit index " + std::to_string(qubit) + " outside [1, " +
                             std::to_string(state.num_qubits()) + "]");
    }
    if (!std::isfinite(angle.radians)) {
        throw DomainError("rotation angle must be finite");
    }
    const double c = std::cos(angle.radians / 2.0);
    const double s = std::sin(angle.radians / 2.0);
    const std::size_t mask = std::size_t{1} << (qubit - 1);

    std::vector<double> out(state.amplitudes_);
    for (std::size_t b = 0; b < out.size(); ++b) {
        if (b & mask) {
            continue;
        }
        const double a0 = out[b];
        const double a1 = out[b | mask];
        out[b] = c * a0 - s * a1;
        out[b | mask] = s * a0 + c * a1;
    }
    return StateVector(state.num_qubits(), std::move(out));
}

std::vector<double> probabilities(const StateVector &state) {
    std::vector<double> probs;
    probs.reserve(state.size());
    for (double c : state.amplitudes()) {
        probs.push_back(c * c);
    }
    return probs;
}

BlochPoint bloch_coordinates(double x) {
    const double theta = encoding_angle(x).radians;
    return {std::sin(theta), 0.0, std::cos(theta)};
}

std::string basis_label(std::uint64_t index, std::size_t num_qubits) {
    std::string label(num_qubits, '0');
    for (std::size_t i = 0; i < num_qubits; ++i) {
        if ((index >> i) & 1U) {
            label[num_qubits - 1 - i] = '1';
        }
    }
    return label;
}

std::size_t zero_count(std::uint64_t index, std::size_t num_qubits) noexcept {
    const std::uint64_t mask =
        num_qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << num_qubits) - 1;
    return num_qubits - static_cast<std::size_t>(std::popcount(index & mask));
}

} // namespace qlp
