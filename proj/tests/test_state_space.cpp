#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bbnet/state_space.hpp"

using bbnet::BigCount;
using bbnet::BigInt;
using bbnet::StateSpaceParams;

namespace {

// Independent route: plain factorials and their ratios, no running products.
BigInt factorial_oracle(long long n) {
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i)
        f *= i;
    return f;
}

BigInt permutations_oracle(long long n, long long k) {
    return factorial_oracle(n) / factorial_oracle(n - k);
}

BigInt path_count_oracle(long long n) {
    BigInt sum = 0;
    for (long long k = 0; k <= n; ++k)
        sum += permutations_oracle(n, k);
    return sum;
}

// e to 60 decimal places, scaled to an integer.
const BigInt kEulerScaled("2718281828459045235360287471352662497757247093699959574966967");
const BigInt kEulerScale = [] {
    BigInt s = 1;
    for (int i = 0; i < 60; ++i)
        s *= 10;
    return s;
}();

} // namespace

TEST_CASE("possible_states") {
    CHECK(bbnet::possible_states({3, 9}).exact == 1536);
    CHECK(bbnet::possible_states({2, 0}).exact == 2);
    CHECK(bbnet::possible_states({4, 3}).exact == 32);
    CHECK_THROWS_AS(bbnet::possible_states({0, 3}), std::invalid_argument);
    CHECK_THROWS_AS(bbnet::possible_states({3, -1}), std::invalid_argument);
}

TEST_CASE("intermediate state count") {
    CHECK(bbnet::intermediate_states({3, 9}) == 1534);
    CHECK(bbnet::intermediate_states({2, 0}) == 0);
    CHECK_THROWS_AS(bbnet::intermediate_states({1, 0}), std::invalid_argument);
}

TEST_CASE("paths_with_k_intermediates worked values") {
    const StateSpaceParams p{3, 9};
    CHECK(bbnet::paths_with_k_intermediates(p, 0).exact == 1);
    CHECK(bbnet::paths_with_k_intermediates(p, 1).exact == 1534);
    CHECK(bbnet::paths_with_k_intermediates(p, 2).exact == 2351622);
}

TEST_CASE("paths_with_k_intermediates rejects k beyond N") {
    CHECK_THROWS_AS(bbnet::paths_with_k_intermediates({2, 0}, 1), std::domain_error);
    CHECK_THROWS_AS(bbnet::paths_with_k_intermediates({3, 1}, 5), std::domain_error);
    CHECK_THROWS_AS(bbnet::paths_with_k_intermediates({3, 1}, -1), std::domain_error);
}

TEST_CASE("paths_with_k_intermediates matches the factorial-ratio route") {
    const StateSpaceParams p{4, 2}; // N = 14
    for (long long k = 0; k <= 14; ++k)
        CHECK(bbnet::paths_with_k_intermediates(p, k).exact == permutations_oracle(14, k));
}

TEST_CASE("paths_with_k_intermediates recurrence") {
    for (long long n : {2LL, 6LL, 14LL, 20LL}) {
        const StateSpaceParams p{n + 2, 0};
        for (long long k = 1; k <= n; ++k) {
            CHECK(bbnet::paths_with_k_intermediates(p, k).exact ==
                  bbnet::paths_with_k_intermediates(p, k - 1).exact * (n - k + 1));
        }
    }
}

TEST_CASE("exact_path_count small cases") {
    CHECK(bbnet::exact_path_count({2, 0}).exact == 1); // only the direct path
    CHECK(bbnet::exact_path_count({2, 1}).exact == 5); // 1 + 2 + 2
    CHECK(bbnet::exact_path_count({3, 1}).exact == 65); // 1 + 4 + 12 + 24 + 24
}

TEST_CASE("exact_path_count equals the summed permutation route for N <= 12") {
    for (long long m = 2; m <= 14; ++m) {
        for (long long n = 0; n <= 3; ++n) {
            const StateSpaceParams p{m, n};
            const BigInt big_n = bbnet::intermediate_states(p);
            if (big_n > 12)
                continue;
            CHECK(bbnet::exact_path_count(p).exact ==
                  path_count_oracle(big_n.convert_to<long long>()));
        }
    }
}

TEST_CASE("exact_path_count equals floor(e * N!) for 1 <= N <= 20") {
    for (long long n = 1; n <= 20; ++n) {
        const BigInt floor_e_fact = kEulerScaled * factorial_oracle(n) / kEulerScale;
        CHECK(bbnet::exact_path_count({n + 2, 0}).exact == floor_e_fact);
    }
}

TEST_CASE("approx_path_count requires at least five intermediate states") {
    CHECK_THROWS_AS(bbnet::approx_path_count({3, 1}), std::domain_error); // N = 4
    CHECK_NOTHROW(bbnet::approx_path_count({7, 0}));                      // N = 5
}

TEST_CASE("approx_path_count direct evaluation") {
    CHECK(bbnet::approx_path_count({2, 2}).exact == 1236); // (103/60) * 720
}

TEST_CASE("approx_path_count holds the 103/60 rational relation") {
    for (long long n : {5LL, 6LL, 10LL, 25LL, 100LL}) {
        const BigCount c = bbnet::approx_path_count({n + 2, 0});
        CHECK(c.exact * 60 == factorial_oracle(n) * 103);
    }
}

TEST_CASE("log10 reporting agrees with exact values") {
    for (long long n : {5LL, 10LL, 50LL, 100LL}) {
        const BigCount c = bbnet::approx_path_count({n + 2, 0});
        CHECK(std::abs(c.log10 - bbnet::log10_of(c.exact)) < 1e-6);
    }
    // Values small enough for double conversion: cross-check against std::log10.
    for (long long m : {2LL, 3LL, 17LL}) {
        for (long long n : {0LL, 9LL, 200LL, 900LL}) {
            const BigCount c = bbnet::possible_states({m, n});
            if (c.exact > BigInt(1) << 996)
                continue;
            CHECK(std::abs(c.log10 - std::log10(c.exact.convert_to<double>())) < 1e-6);
        }
    }
}

TEST_CASE("worked approximation: three containers, nine facts") {
    const BigCount c = bbnet::approx_path_count({3, 9});
    // 1.19 x 10^4223 has 4224 digits.
    CHECK(c.exact.str().size() == 4224);
    const double reported = 4223.0 + std::log10(1.19);
    CHECK(std::abs(c.log10 - reported) <= 0.05);
    CHECK(std::abs(c.log10 - bbnet::log10_of(c.exact)) < 1e-6);
}

TEST_CASE("format_count") {
    CHECK(bbnet::format_count(bbnet::possible_states({3, 9})) == "1536");
    // 40-digit boundary: exact digits up to 40, scientific beyond.
    BigInt forty = 1;
    for (int i = 0; i < 39; ++i)
        forty *= 10;
    CHECK(bbnet::format_count({forty, bbnet::log10_of(forty)}).size() == 40);
    BigInt big = forty * 100; // 42 digits
    CHECK(bbnet::format_count({big, bbnet::log10_of(big)}) == "1.00 × 10^41");
}
