#include <doctest.h>

#include <array>
#include <numeric>
#include <random>

#include "oracle.hpp"
#include "qlp/state.hpp"

using namespace qlp;

namespace {
// Amplitudes of the encoded x = [0.8, 0.3, 0.7] state as printed (3 decimals).
const std::vector<double> kPrintedEq1{0.125, 0.385, 0.064, 0.196, 0.245, 0.755, 0.125, 0.385};
} // namespace

TEST_CASE("qubit_amplitudes") {
    SUBCASE("identity and half turn") {
        const auto zero = qubit_amplitudes(0.0);
        CHECK(zero.zero == 1.0);
        CHECK(zero.one == 0.0);
        const auto one = qubit_amplitudes(1.0);
        CHECK(std::abs(one.zero) < 1e-15);
        CHECK(one.one == 1.0);
    }
    SUBCASE("x = 0.3") {
        const auto a = qubit_amplitudes(0.3);
        CHECK(a.zero == doctest::Approx(0.8910065241883679).epsilon(1e-14));
        CHECK(a.one == doctest::Approx(0.45399049973954675).epsilon(1e-14));
        CHECK(a.zero * a.zero + a.one * a.one == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("tau halves the angle") {
        const auto a = qubit_amplitudes(1.0, 2.0);
        CHECK(a.zero == doctest::Approx(std::sqrt(0.5)));
        CHECK(a.one == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(qubit_amplitudes(-0.01), DomainError);
        CHECK_THROWS_AS(qubit_amplitudes(1.01), DomainError);
        CHECK_THROWS_AS(qubit_amplitudes(std::nan("")), DomainError);
        CHECK_THROWS_AS(qubit_amplitudes(0.5, 0.5), DomainError);
    }
}

TEST_CASE("product_state reproduces the printed x = [0.8, 0.3, 0.7] state") {
    const StateVector s = product_state(NormalizedInput({0.8, 0.3, 0.7}));
    REQUIRE(s.size() == 8);
    REQUIRE(s.num_qubits() == 3);
    for (std::size_t b = 0; b < 8; ++b) {
        CHECK(std::abs(s[b] - kPrintedEq1[b]) <= 0.001);
    }
    CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-12);
}

TEST_CASE("product_state corner inputs") {
    const StateVector zeros = product_state(NormalizedInput({0, 0, 0}));
    CHECK(zeros[0] == 1.0);
    for (std::size_t b = 1; b < 8; ++b) {
        CHECK(zeros[b] == 0.0);
    }
    const StateVector ones = product_state(NormalizedInput({1, 1, 1}));
    CHECK(ones[7] == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t b = 0; b < 7; ++b) {
        CHECK(std::abs(ones[b]) < 1e-15);
    }
}

TEST_CASE("NormalizedInput validation") {
    CHECK_THROWS_AS(NormalizedInput({}), DimensionError);
    CHECK_THROWS_AS(NormalizedInput({0.5, 1.5}), DomainError);
    CHECK_THROWS_AS(NormalizedInput(std::vector<double>(kMaxQubits + 1, 0.5)), DimensionError);
    CHECK_NOTHROW(NormalizedInput(std::vector<double>(kMaxQubits, 0.5)));
}

TEST_CASE("apply_ry") {
    const StateVector zero = StateVector::basis(3);
    SUBCASE("zero rotation is the identity") {
        const StateVector s = apply_ry(zero, 1, RotationAngle{0.0});
        CHECK(oracle::max_abs_diff(s.amplitudes(), zero.amplitudes()) == 0.0);
    }
    SUBCASE("half turn on qubit 2 lands on index 2") {
        const StateVector s = apply_ry(zero, 2, RotationAngle{kPi});
        CHECK(s[2] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(s[0]) < 1e-15);
    }
    SUBCASE("gate path matches the closed form for the x = [0.8, 0.3, 0.7] state") {
        const StateVector gates = oracle::gate_encode({0.8, 0.3, 0.7});
        const StateVector closed = product_state(NormalizedInput({0.8, 0.3, 0.7}));
        CHECK(oracle::max_abs_diff(gates.amplitudes(), closed.amplitudes()) <= 1e-10);
    }
    SUBCASE("index errors") {
        CHECK_THROWS_AS(apply_ry(zero, 0, RotationAngle{1.0}), DimensionError);
        CHECK_THROWS_AS(apply_ry(zero, 4, RotationAngle{1.0}), DimensionError);
        CHECK_THROWS_AS(apply_ry(zero, 1, RotationAngle{INFINITY}), DomainError);
    }
}

TEST_CASE("probabilities") {
    const auto p = probabilities(product_state(NormalizedInput({0.8, 0.3, 0.7})));
    // Elementwise squares of the closed-form amplitudes, computed independently.
    const std::vector<double> expected{0.015625,   0.14800212, 0.0040565,  0.03842375,
                                       0.060185,   0.5700805,  0.015625,   0.14800212};
    CHECK(oracle::max_abs_diff(p, expected) <= 1e-6);
    CHECK(std::abs(p[5] - 0.57) <= 0.01);

    const auto e0 = probabilities(StateVector::basis(3, 0));
    CHECK(e0[0] == 1.0);
    CHECK(std::accumulate(e0.begin() + 1, e0.end(), 0.0) == 0.0);
}

TEST_CASE("bloch_coordinates") {
    const BlochPoint north = bloch_coordinates(0.0);
    CHECK(north.x == 0.0);
    CHECK(north.y == 0.0);
    CHECK(north.z == 1.0);
    const BlochPoint equator = bloch_coordinates(0.5);
    CHECK(equator.x == doctest::Approx(1.0));
    CHECK(std::abs(equator.z) < 1e-15);
    const BlochPoint q2 = bloch_coordinates(0.3);
    CHECK(q2.x == doctest::Approx(0.8090169943749475).epsilon(1e-14));
    CHECK(q2.y == 0.0);
    CHECK(q2.z == doctest::Approx(0.5877852522924731).epsilon(1e-14));
    CHECK_THROWS_AS(bloch_coordinates(2.0), DomainError);
}

TEST_CASE("StateVector::from_amplitudes validation") {
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), DimensionError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0}), DimensionError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({0.5, 0.5}), DomainError);
    const StateVector s = StateVector::from_amplitudes({std::sqrt(0.5), -std::sqrt(0.5)});
    CHECK(s.num_qubits() == 1);
    CHECK_THROWS_AS(StateVector::basis(2, 4), DimensionError);
}

TEST_CASE("basis labels are MSB first") {
    CHECK(basis_label(5, 3) == "101");
    CHECK(basis_label(1, 3) == "001");
    CHECK(basis_label(4, 3) == "100");
    CHECK(zero_count(0, 3) == 3);
    CHECK(zero_count(6, 3) == 1);
}

// Property-style checks over random inputs ----------------------------------

TEST_CASE("property: norm, factorization and oracle equivalence") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const double tau = std::array{1.0, 2.0, 4.0}[trial % 3];
        const auto x = oracle::random_unit_vector(rng, n);
        const StateVector s = product_state(NormalizedInput(x), tau);

        CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-12);
        CHECK(oracle::max_abs_diff(s.amplitudes(), oracle::brute_force_product(x, tau)) <= 1e-14);
        CHECK(oracle::max_abs_diff(s.amplitudes(), oracle::gate_encode(x, tau).amplitudes()) <=
              1e-10);
        for (double c : s.amplitudes()) {
            CHECK(c >= 0.0);
        }

        const auto p = probabilities(s);
        for (std::size_t b = 0; b < p.size(); ++b) {
            double expected = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double c = std::cos(kPi * x[i] / tau / 2.0);
                expected *= ((b >> i) & 1U) ? 1.0 - c * c : c * c;
            }
            CHECK(std::abs(p[b] - expected) <= 1e-12);
        }
    }
}

TEST_CASE("property: rotation composition") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
        const StateVector s = product_state(NormalizedInput(oracle::random_unit_vector(rng, n)));
        const std::size_t q = 1 + static_cast<std::size_t>(trial) % n;
        const double a = angle(rng);
        const double b = angle(rng);
        const StateVector two = apply_ry(apply_ry(s, q, RotationAngle{a}), q, RotationAngle{b});
        const StateVector one = apply_ry(s, q, RotationAngle{a + b});
        CHECK(oracle::max_abs_diff(two.amplitudes(), one.amplitudes()) <= 1e-10);
        CHECK(std::abs(two.norm_squared() - 1.0) <= 1e-12);
    }
}

TEST_CASE("property: bit-ordering witness") {
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> x(n, 0.0);
            x[i] = 1.0;
            const StateVector s = product_state(NormalizedInput(x));
            for (std::size_t b = 0; b < s.size(); ++b) {
                if (b == (std::size_t{1} << i)) {
                    CHECK(s[b] == doctest::Approx(1.0).epsilon(1e-15));
                } else {
                    CHECK(std::abs(s[b]) < 1e-15);
                }
            }
        }
    }
}

TEST_CASE("property: single-qubit sinusoid") {
    for (int k = 0; k <= 1000; ++k) {
        const double x = k / 1000.0;
        const auto p = probabilities(product_state(NormalizedInput({x})));
        CHECK(std::abs(p[0] - (1.0 + std::cos(kPi * x)) / 2.0) <= 1e-12);
    }
}

TEST_CASE("property: Bloch points lie on the unit circle in the xz plane") {
    for (int k = 0; k <= 100; ++k) {
        const BlochPoint p = bloch_coordinates(k / 100.0);
        CHECK(std::abs(p.x * p.x + p.y * p.y + p.z * p.z - 1.0) <= 1e-12);
        CHECK(p.y == 0.0);
    }
}
