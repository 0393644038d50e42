#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "chain_eigen/analytic.hpp"
#include "test_util.hpp"

using namespace chain_eigen;

namespace {

const double r2 = std::sqrt(2.0);

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("mode_tuples enumerates the admissible quantum numbers") {
    const auto n3m2 = mode_tuples(3, 2);
    REQUIRE(n3m2.size() == 3); // N(N-1)/2
    CHECK(n3m2[0].modes == std::vector<int>{1, 2});
    CHECK(n3m2[1].modes == std::vector<int>{1, 3});
    CHECK(n3m2[2].modes == std::vector<int>{2, 3});
    const auto ground = mode_tuples(5, 0);
    REQUIRE(ground.size() == 1);
    CHECK(ground[0].modes.empty());
}

TEST_CASE("validate_mode rejects malformed tuples") {
    CHECK_NOTHROW(validate_mode({{1, 3}}, 3));
    CHECK_THROWS_AS(validate_mode({{3, 1}}, 3), domain_error);
    CHECK_THROWS_AS(validate_mode({{1, 1}}, 3), domain_error);
    CHECK_THROWS_AS(validate_mode({{0}}, 3), domain_error);
    CHECK_THROWS_AS(validate_mode({{4}}, 3), domain_error);
    CHECK_THROWS_AS(validate_mode({{1, 2, 3, 4}}, 3), domain_error);
}

TEST_CASE("coefficient closed-form spot values") {
    CHECK(coefficient({{1}}, {{2}}, 3) == 1.0);
    CHECK(coefficient({{1, 3}}, {{1, 3}}, 3) == 0.0);
    // repeated mode entry: equal rows
    CHECK(coefficient({{2, 2}}, {{1, 2}}, 4) == 0.0);
    CHECK_THROWS_AS(coefficient({{1, 2}}, {{1}}, 4), domain_error);
    CHECK(coefficient({{}}, {{}}, 4) == 1.0);
}

TEST_CASE("coefficient vanishes exactly on boundary patterns and forbidden modes") {
    // k = 0 and k = N+1 zero out a column
    CHECK(coefficient({{1, 2}}, {{0, 3}}, 4) == 0.0);
    CHECK(coefficient({{1, 2}}, {{2, 5}}, 4) == 0.0);
    // g = N+1 zeroes out a row
    CHECK(coefficient({{5}}, {{2}}, 4) == 0.0);
    CHECK(coefficient({{2, 5}}, {{1, 3}}, 4) == 0.0);
}

TEST_CASE("coefficient is antisymmetric in mode and pattern entries") {
    std::mt19937 gen(316u);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + static_cast<int>(draw(gen, 8));
        const int m = 2 + static_cast<int>(draw(gen, std::min(n - 1, 4)));
        ModeTuple mode{draw_subset(gen, n, m)};
        ExcitationPattern pat{draw_subset(gen, n, m)};
        const double base = coefficient(mode, pat, n);

        ModeTuple swapped_mode = mode;
        std::swap(swapped_mode.modes[0], swapped_mode.modes[m - 1]);
        REQUIRE(close_rel(coefficient(swapped_mode, pat, n), -base, 1e-10));

        ExcitationPattern swapped_pat = pat;
        std::swap(swapped_pat.indices[0], swapped_pat.indices[m - 1]);
        REQUIRE(close_rel(coefficient(mode, swapped_pat, n), -base, 1e-10));

        ExcitationPattern doubled = pat;
        doubled.indices[0] = doubled.indices[m - 1];
        REQUIRE(std::abs(coefficient(mode, doubled, n)) <= 1e-12);
    }
}

TEST_CASE("coefficient_permutation_sum spot values and guard") {
    CHECK(coefficient_permutation_sum({{1, 3}}, {{2, 3}}, 3) == Catch::Approx(r2).margin(1e-12));
    CHECK_THROWS_AS(
        coefficient_permutation_sum({{1, 2, 3, 4, 5, 6, 7, 8, 9}},
                                    {{1, 2, 3, 4, 5, 6, 7, 8, 9}}, 12),
        resource_error);
    // M = 1: a single sine either way
    for (int g = 1; g <= 5; ++g)
        for (int k = 1; k <= 5; ++k)
            CHECK(coefficient_permutation_sum({{g}}, {{k}}, 5) == coefficient({{g}}, {{k}}, 5));
}

TEST_CASE("determinant path equals Levi-Civita sum, exhaustive M <= 3") {
    for (int n = 2; n <= 8; ++n) {
        for (int m = 1; m <= std::min(3, n); ++m) {
            for (const auto& mode : mode_tuples(n, m)) {
                for (const auto& pat : enumerate_patterns({n, m})) {
                    const double det = coefficient(ModeTuple{mode.modes}, pat, n);
                    const double sum = coefficient_permutation_sum(ModeTuple{mode.modes}, pat, n);
                    REQUIRE(close_rel(det, sum, 1e-10));
                }
            }
        }
    }
}

TEST_CASE("determinant path equals Levi-Civita sum, randomized M in 4..6") {
    std::mt19937 gen(577u);
    for (int m = 4; m <= 6; ++m) {
        for (int trial = 0; trial < 60; ++trial) {
            const int n = m + static_cast<int>(draw(gen, 11 - m));
            const ModeTuple mode{draw_subset(gen, n, m)};
            const ExcitationPattern pat{draw_subset(gen, n, m)};
            const double det = coefficient(mode, pat, n);
            const double sum = coefficient_permutation_sum(mode, pat, n);
            REQUIRE(close_rel(det, sum, 1e-10));
        }
    }
}

TEST_CASE("eigenstate closed-form amplitudes") {
    const ChainConfig n2{2, 0.0, 1.0};
    const auto sym = eigenstate({{1}}, n2);
    REQUIRE(sym.amplitudes.size() == 2);
    CHECK(sym.amplitudes[0] == Catch::Approx(1.0 / r2).margin(1e-12));
    CHECK(sym.amplitudes[1] == Catch::Approx(1.0 / r2).margin(1e-12));
    CHECK(sym.normalized);

    const ChainConfig n3{3, 0.0, 1.0};
    const auto mid = eigenstate({{1, 3}}, n3);
    REQUIRE(mid.amplitudes.size() == 3);
    CHECK(mid.amplitudes[0] == Catch::Approx(-1.0 / r2).margin(1e-12));
    CHECK(mid.amplitudes[1] == 0.0);
    CHECK(mid.amplitudes[2] == Catch::Approx(1.0 / r2).margin(1e-12));

    const auto ground = eigenstate({{}}, n3);
    REQUIRE(ground.amplitudes.size() == 1);
    CHECK(ground.amplitudes[0] == 1.0);
    CHECK(ground.energy == 0.0);
}

TEST_CASE("unnormalized squared norm follows ((N+1)/2)^M") {
    for (int n = 1; n <= 10; ++n) {
        const ChainConfig cfg{n, 0.3, 0.9};
        for (int m = 0; m <= n; ++m) {
            for (const auto& mode : mode_tuples(n, m)) {
                const auto st = eigenstate(mode, cfg, false);
                const double n2sq = inner(st.amplitudes, st.amplitudes);
                const double want = std::pow(0.5 * (n + 1), m);
                REQUIRE(close_rel(n2sq, want, 1e-10));
            }
        }
    }
}

TEST_CASE("energy closed-form spot values") {
    CHECK(energy({{2}}, {3, 5.0, 1.0}) == Catch::Approx(5.0).margin(1e-12));
    CHECK(energy({{1, 3}}, {3, 0.0, 1.0}) == 0.0);
    CHECK(energy({{}}, {7, 2.5, -0.4}) == 0.0);
}

TEST_CASE("full_spectrum closed-form spot values") {
    const auto s31 = full_spectrum({3, 0.0, 1.0}, 1);
    REQUIRE(s31.size() == 3);
    CHECK(s31[0].second == Catch::Approx(r2).margin(1e-12));
    CHECK(s31[1].second == 0.0);
    CHECK(s31[2].second == Catch::Approx(-r2).margin(1e-12));

    const auto s32 = full_spectrum({3, 0.0, 1.0}, 2);
    REQUIRE(s32.size() == 3);
    CHECK(s32[0].second == Catch::Approx(r2).margin(1e-12));
    CHECK(s32[1].second == 0.0);
    CHECK(s32[2].second == Catch::Approx(-r2).margin(1e-12));

    const auto s21 = full_spectrum({2, 0.0, 1.0}, 1);
    REQUIRE(s21.size() == 2);
    CHECK(s21[0].second == Catch::Approx(1.0).margin(1e-12));
    CHECK(s21[1].second == Catch::Approx(-1.0).margin(1e-12));
}

TEST_CASE("energy shift multiset is symmetric under negation") {
    for (int n = 1; n <= 10; ++n) {
        const ChainConfig cfg{n, 0.0, 1.0};
        for (int m = 0; m <= n; ++m) {
            std::vector<double> shifts;
            for (const auto& [mode, e] : full_spectrum(cfg, m)) shifts.push_back(e);
            std::sort(shifts.begin(), shifts.end());
            const std::size_t dim = shifts.size();
            for (std::size_t i = 0; i < dim; ++i)
                REQUIRE(std::abs(shifts[i] + shifts[dim - 1 - i]) <= 1e-12);
        }
    }
}
