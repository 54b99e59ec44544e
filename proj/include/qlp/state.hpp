#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qlp/error.hpp"

namespace qlp {

/// Dense storage of 2^n amplitudes is capped at this many qubits.
inline constexpr std::size_t kMaxQubits = 24;
inline constexpr double kDefaultTau = 1.0;
inline constexpr double kPi = 3.14159265358979323846;

/**
 * Ordered vector of unit-interval reals, one entry per sensor/qubit.
 *
 * Entry i (zero-based) belongs to qubit i+1, which is bit i of a basis
 * index. The tag keeps encoded inputs and query targets from being mixed
 * up at call sites while sharing the validation.
 */
template <class Tag> class UnitVector {
  public:
    explicit UnitVector(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) {
            throw DimensionError("unit vector must have at least one entry");
        }
        if (values_.size() > kMaxQubits) {
            throw DimensionError("unit vector has " + std::to_string(values_.size()) +
                                 " entries; at most " + std::to_string(kMaxQubits) +
                                 " are supported");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double v = values_[i];
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DomainError("entry " + std::to_string(i + 1) + " = " + std::to_string(v) +
                                  " is outside [0, 1]");
            }
        }
    }

    template <class OtherTag>
    explicit UnitVector(const UnitVector<OtherTag> &other)
        : UnitVector(std::vector<double>(other.values().begin(), other.values().end())) {}

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const UnitVector &, const UnitVector &) = default;

  private:
    std::vector<double> values_;
};

struct NormalizedInputTag {};
struct QueryTargetTag {};

/// Normalized sensor readings x in [0,1]^n.
using NormalizedInput = UnitVector<NormalizedInputTag>;
/// Target perception used to build a query (basis change).
using QueryTarget = UnitVector<QueryTargetTag>;

/// Ry rotation angle in radians.
struct RotationAngle {
    double radians = 0.0;
};

/// pi * x / tau, the angle that encodes a normalized reading.
RotationAngle encoding_angle(double x, double tau = kDefaultTau);
/// -pi * x / tau, the inverse rotation that aligns a target with |0>.
RotationAngle query_angle(double target, double tau = kDefaultTau);

/// Amplitudes of Ry(pi x / tau)|0> on the |0>, |1> basis.
struct QubitAmplitudes {
    double zero = 1.0;
    double one = 0.0;
};

QubitAmplitudes qubit_amplitudes(double x, double tau = kDefaultTau);

/// Real statevector over 2^n basis states. Index bit i is qubit i+1.
class StateVector {
  public:
    /// |index> on num_qubits qubits.
    static StateVector basis(std::size_t num_qubits, std::uint64_t index = 0);

    /// Validates length (a power of two, 1..kMaxQubits qubits) and unit norm.
    static StateVector from_amplitudes(std::vector<double> amplitudes,
                                       double norm_tolerance = 1e-12);

    [[nodiscard]] std::size_t num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const double> amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] double operator[](std::size_t index) const { return amplitudes_[index]; }
    [[nodiscard]] double norm_squared() const noexcept;

  private:
    StateVector(std::size_t num_qubits, std::vector<double> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

    friend StateVector product_state(std::span<const QubitAmplitudes>);
    friend StateVector apply_ry(const StateVector &, std::size_t, RotationAngle);

    std::size_t num_qubits_ = 0;
    std::vector<double> amplitudes_;
};

/// Tensor product of single-qubit states; factors[i] is qubit i+1.
StateVector product_state(std::span<const QubitAmplitudes> factors);

/// Encodes every x_i as Ry(pi x_i / tau) on qubit i+1 of |0...0>.
StateVector product_state(const NormalizedInput &input, double tau = kDefaultTau);

/// General single-qubit Ry gate; qubit is 1-based.
StateVector apply_ry(const StateVector &state, std::size_t qubit, RotationAngle angle);

/// Squared amplitudes.
std::vector<double> probabilities(const StateVector &state);

struct BlochPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
};

/// Bloch vector of Ry(pi x)|0>, i.e. (sin pi x, 0, cos pi x).
BlochPoint bloch_coordinates(double x);

/// Bitstring of a basis index, most significant qubit (q_n) first.
std::string basis_label(std::uint64_t index, std::size_t num_qubits);

/// Number of zero bits among the low num_qubits bits of index.
std::size_t zero_count(std::uint64_t index, std::size_t num_qubits) noexcept;

} // namespace qlp
