#include "qlp/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "qlp/error.hpp"
#include "qlp/state.hpp"

namespace qlp {

void validate_probabilities(std::span<const double> probs, double tolerance) {
    if (probs.size() < 2 || !std::has_single_bit(probs.size())) {
        throw DomainError("probability vector length " + std::to_string(probs.size()) +
                          " is not a power of two >= 2");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw DomainError("probability vector has a negative or non-finite entry");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > tolerance) {
        throw DomainError("probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

std::size_t MeasurementHistogram::num_qubits() const noexcept {
    return counts.empty() ? 0 : static_cast<std::size_t>(std::countr_zero(counts.size()));
}

MeasurementHistogram sample(std::span<const double> probs, std::uint64_t shots,
                            std::uint64_t seed) {
    validate_probabilities(probs);
    if (shots == 0) {
        throw DomainError("shots must be positive");
    }

    std::vector<double> cumulative(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
    // Rounding can leave the running sum just below 1; such u go to the last
    // outcome that actually has mass.
    std::size_t last_nonzero = probs.size() - 1;
    while (last_nonzero > 0 && probs[last_nonzero] == 0.0) {
        --last_nonzero;
    }

    MeasurementHistogram hist{std::vector<std::uint64_t>(probs.size(), 0), shots, seed};
    std::mt19937_64 engine(seed);
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        const auto outcome = it == cumulative.end()
                                 ? last_nonzero
                                 : static_cast<std::size_t>(it - cumulative.begin());
        ++hist.counts[outcome];
    }
    return hist;
}

std::vector<double> frequencies(const MeasurementHistogram &hist) {
    if (hist.shots == 0) {
        throw DomainError("histogram has no shots");
    }
    std::vector<double> freq;
    freq.reserve(hist.counts.size());
    const auto shots = static_cast<double>(hist.shots);
    for (std::uint64_t c : hist.counts) {
        freq.push_back(static_cast<double>(c) / shots);
    }
    return freq;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
    auto splitmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return splitmix(base ^ splitmix(index));
}

void write_histogram(std::ostream &out, const MeasurementHistogram &hist) {
    const std::size_t n = hist.num_qubits();
    const auto freq = frequencies(hist);
    char buf[64];
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%.17g", freq[b]);
        out << basis_label(b, n) << ',' << hist.counts[b] << ',' << buf << '\n';
    }
}

} // namespace qlp
