#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qlp {

/// Seed used by the command-line tool when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20201;

/// Tolerance on sum(probs) == 1 for vectors handed to sampling and grouping.
inline constexpr double kProbabilitySumTolerance = 1e-9;

/// Throws DomainError unless probs has length 2^n (n >= 1), no negative or
/// non-finite entries, and sums to 1 within `tolerance`.
void validate_probabilities(std::span<const double> probs,
                            double tolerance = kProbabilitySumTolerance);

/// Counts of N simulated projective measurements.
struct MeasurementHistogram {
    /// Dense: counts[b] is the number of shots that produced basis state b.
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t num_qubits() const noexcept;
    friend bool operator==(const MeasurementHistogram &, const MeasurementHistogram &) = default;
};

/**
 * Multinomial draw of `shots` outcomes from `probs`.
 *
 * Each shot takes the next 64-bit output of std::mt19937_64 seeded with
 * `seed`, keeps its top 53 bits as a uniform u in [0, 1), and selects the
 * first basis state whose cumulative probability exceeds u. Every piece of
 * that pipeline is fully specified, so counts are identical on every
 * conforming platform.
 */
MeasurementHistogram sample(std::span<const double> probs, std::uint64_t shots,
                            std::uint64_t seed);

/// counts / shots.
std::vector<double> frequencies(const MeasurementHistogram &hist);

/// Per-task seed for parallel sampling: splitmix64 mix of (base, index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

/// One line per basis state: `bitstring,count,frequency`, bitstring MSB-first.
void write_histogram(std::ostream &out, const MeasurementHistogram &hist);

} // namespace qlp
