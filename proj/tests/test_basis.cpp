#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "chain_eigen/basis.hpp"
#include "test_util.hpp"

using namespace chain_eigen;

namespace {

// Independent enumeration oracle: recursive subset listing.
void collect(int n, int m, int start, std::vector<int>& cur,
             std::vector<ExcitationPattern>& out) {
    if (static_cast<int>(cur.size()) == m) {
        out.push_back(ExcitationPattern{cur});
        return;
    }
    for (int k = start; k <= n; ++k) {
        cur.push_back(k);
        collect(n, m, k + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<ExcitationPattern> brute_patterns(int n, int m) {
    std::vector<ExcitationPattern> out;
    std::vector<int> cur;
    collect(n, m, 1, cur, out);
    return out;
}

// Pascal-triangle oracle for binomial values.
std::uint64_t pascal(int n, int k) {
    std::vector<std::uint64_t> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<std::uint64_t> next(i + 1, 1);
        for (int j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
    }
    return row[k];
}

} // namespace

TEST_CASE("subspace_dimension is the exact binomial coefficient") {
    CHECK(subspace_dimension({4, 2}) == 6);
    CHECK(subspace_dimension({7, 0}) == 1);
    CHECK(subspace_dimension({20, 10}) == 184756);
    for (int n = 1; n <= 20; ++n)
        for (int m = 0; m <= n; ++m) CHECK(subspace_dimension({n, m}) == pascal(n, m));
    CHECK_THROWS_AS(subspace_dimension({4, 5}), domain_error);
    CHECK_THROWS_AS(subspace_dimension({4, -1}), domain_error);
    CHECK_THROWS_AS(subspace_dimension({0, 0}), domain_error);
}

TEST_CASE("binomial overflow is a resource error") {
    CHECK(binomial(62, 31) == 465428353255261088ull);
    CHECK_THROWS_AS(binomial(70, 35), resource_error);
}

TEST_CASE("rank matches lexicographic enumeration") {
    CHECK(rank({{1, 2}}, {4, 2}) == 0);
    CHECK(rank({{3, 4}}, {4, 2}) == 5);
    CHECK(rank({{2, 4}}, {4, 2}) == 4);
    CHECK_THROWS_AS(rank({{2, 1}}, {4, 2}), domain_error);
    CHECK_THROWS_AS(rank({{1, 5}}, {4, 2}), domain_error);
    CHECK_THROWS_AS(rank({{1}}, {4, 2}), domain_error);
}

TEST_CASE("unrank matches lexicographic enumeration") {
    CHECK(unrank(0, {4, 2}).indices == std::vector<int>{1, 2});
    CHECK(unrank(5, {4, 2}).indices == std::vector<int>{3, 4});
    CHECK(unrank(3, {4, 2}).indices == std::vector<int>{2, 3});
    CHECK_THROWS_AS(unrank(6, {4, 2}), domain_error);
}

TEST_CASE("rank and unrank are inverse bijections, exhaustive N <= 16") {
    for (int n = 1; n <= 16; ++n) {
        for (int m = 0; m <= n; ++m) {
            const SubspaceAddress addr{n, m};
            const std::uint64_t dim = subspace_dimension(addr);
            for (std::uint64_t i = 0; i < dim; ++i) {
                const ExcitationPattern p = unrank(i, addr);
                REQUIRE(is_valid_pattern(p, addr));
                REQUIRE(rank(p, addr) == i);
            }
        }
    }
}

TEST_CASE("enumerate_patterns lists subsets in strict lexicographic order") {
    const auto n3m2 = enumerate_patterns({3, 2});
    REQUIRE(n3m2.size() == 3);
    CHECK(n3m2[0].indices == std::vector<int>{1, 2});
    CHECK(n3m2[1].indices == std::vector<int>{1, 3});
    CHECK(n3m2[2].indices == std::vector<int>{2, 3});

    const auto n2m1 = enumerate_patterns({2, 1});
    REQUIRE(n2m1.size() == 2);
    CHECK(n2m1[0].indices == std::vector<int>{1});
    CHECK(n2m1[1].indices == std::vector<int>{2});

    const auto n5m3 = enumerate_patterns({5, 3});
    REQUIRE(n5m3.size() == 10);
    CHECK(n5m3.front().indices == std::vector<int>{1, 2, 3});
    CHECK(n5m3.back().indices == std::vector<int>{3, 4, 5});

    for (int n = 1; n <= 9; ++n) {
        for (int m = 0; m <= n; ++m) {
            const auto got = enumerate_patterns({n, m});
            const auto want = brute_patterns(n, m);
            REQUIRE(got.size() == want.size());
            for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == want[i]);
            for (std::size_t i = 1; i < got.size(); ++i)
                REQUIRE(got[i - 1].indices < got[i].indices);
        }
    }
}

TEST_CASE("enumerate_patterns respects the dimension cap") {
    CHECK_THROWS_AS(enumerate_patterns({30, 15}, 1000), resource_error);
    CHECK(enumerate_patterns({10, 5}, 252).size() == 252);
}

TEST_CASE("apply_hop implements the three invalidity conditions") {
    const SubspaceAddress n4m2{4, 2};
    CHECK_FALSE(apply_hop({{1, 3}}, 1, -1, n4m2));      // lands on 0
    CHECK_FALSE(apply_hop({{2, 3}}, 2, -1, n4m2));      // duplicate index
    CHECK_FALSE(apply_hop({{1, 4}}, 2, +1, n4m2));      // lands on N+1
    const auto hopped = apply_hop({{1, 3}}, 2, +1, n4m2);
    REQUIRE(hopped);
    CHECK(hopped->indices == std::vector<int>{1, 4});
    CHECK_THROWS_AS(apply_hop({{1, 3}}, 3, +1, n4m2), domain_error);
    CHECK_THROWS_AS(apply_hop({{1, 3}}, 1, 2, n4m2), domain_error);
}

TEST_CASE("apply_hop validity matches the raw-tuple rules on random patterns") {
    std::mt19937 gen(20240811u);
    for (int trial = 0; trial < 2000; ++trial) {
        const int n = 2 + static_cast<int>(draw(gen, 11));
        const int m = 1 + static_cast<int>(draw(gen, n));
        const SubspaceAddress addr{n, m};
        const ExcitationPattern p{draw_subset(gen, n, m)};
        const int slot = 1 + static_cast<int>(draw(gen, m));
        const int dir = draw(gen, 2) == 0 ? -1 : +1;
        const int moved = p.indices[slot - 1] + dir;
        const bool hits_boundary = moved == 0 || moved == n + 1;
        bool collides = false;
        for (int i = 0; i < m; ++i)
            if (i != slot - 1 && p.indices[i] == moved) collides = true;
        const auto hopped = apply_hop(p, slot, dir, addr);
        if (hits_boundary || collides) {
            REQUIRE_FALSE(hopped);
        } else {
            REQUIRE(hopped);
            REQUIRE(hopped->indices.size() == p.indices.size());
            REQUIRE(is_valid_pattern(*hopped, addr));
        }
    }
}
