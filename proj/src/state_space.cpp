#include "bbnet/state_space.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace bbnet {

namespace {

// Keeps factorial-sized computations from running unbounded; 1534 (the
// 3-container, 9-fact worked size) sits far below this.
constexpr long long kMaxFactorialTerms = 100000;

void check_params(const StateSpaceParams& p, long long min_containers) {
    if (p.containers < min_containers)
        throw std::invalid_argument("container count must be at least " +
                                    std::to_string(min_containers));
    if (p.facts < 0)
        throw std::invalid_argument("fact count must be non-negative");
}

long long intermediate_states_checked(const StateSpaceParams& p) {
    check_params(p, 2);
    BigInt n = intermediate_states(p);
    if (n > kMaxFactorialTerms)
        throw std::domain_error("state space too large for factorial computation (N = " +
                                n.str() + ")");
    return n.convert_to<long long>();
}

BigInt factorial(long long n) {
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace

double log10_of(const BigInt& v) {
    if (v < 0)
        throw std::invalid_argument("log10 of a negative value");
    if (v == 0)
        return -std::numeric_limits<double>::infinity();
    const std::string digits = v.str();
    const std::size_t lead_len = std::min<std::size_t>(digits.size(), 18);
    const double lead = std::stod(digits.substr(0, lead_len));
    return std::log10(lead) + static_cast<double>(digits.size() - lead_len);
}

BigCount possible_states(const StateSpaceParams& p) {
    check_params(p, 1);
    BigInt exact = BigInt(p.containers) << p.facts;
    return {exact, log10_of(exact)};
}

BigInt intermediate_states(const StateSpaceParams& p) {
    check_params(p, 2);
    return (BigInt(p.containers) << p.facts) - 2;
}

BigCount paths_with_k_intermediates(const StateSpaceParams& p, long long k) {
    check_params(p, 2);
    if (k < 0)
        throw std::domain_error("k must be non-negative");
    BigInt n = intermediate_states(p);
    if (k > n)
        throw std::domain_error("k = " + std::to_string(k) + " exceeds intermediate state count " +
                                n.str());
    if (k > kMaxFactorialTerms)
        throw std::domain_error("k too large for factorial computation");
    BigInt product = 1;
    for (long long i = 0; i < k; ++i)
        product *= n - i;
    return {product, log10_of(product)};
}

BigCount exact_path_count(const StateSpaceParams& p) {
    const long long n = intermediate_states_checked(p);
    BigInt term = 1;
    BigInt sum = 1; // k = 0: the direct ingress-egress path
    for (long long k = 1; k <= n; ++k) {
        term *= n - k + 1;
        sum += term;
    }
    return {sum, log10_of(sum)};
}

BigCount approx_path_count(const StateSpaceParams& p) {
    const long long n = intermediate_states_checked(p);
    if (n < 5)
        throw std::domain_error("approximation requires at least 5 intermediate states (N = " +
                                std::to_string(n) + ")");
    // N! is divisible by 60 for N >= 5, so 103 * N! / 60 is exact.
    BigInt exact = factorial(n) * 103 / 60;
    const double log10 = (std::lgamma(static_cast<double>(n) + 1.0) +
                          std::log(103.0 / 60.0)) / std::log(10.0);
    return {exact, log10};
}

std::string format_count(const BigCount& c) {
    const std::string digits = c.exact.str();
    if (digits.size() <= 40)
        return digits;
    long long exponent = static_cast<long long>(std::floor(c.log10));
    double mantissa = std::pow(10.0, c.log10 - static_cast<double>(exponent));
    // Rounding the mantissa to two decimals may carry it to 10.00.
    if (mantissa >= 9.995) {
        mantissa /= 10.0;
        ++exponent;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f × 10^%lld", mantissa, exponent);
    return buf;
}

} // namespace bbnet
