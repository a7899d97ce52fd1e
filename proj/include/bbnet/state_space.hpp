#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bbnet {

using BigInt = boost::multiprecision::cpp_int;

struct StateSpaceParams {
    long long containers = 0; // m
    long long facts = 0;      // n
};

// An exact count plus its decimal logarithm for reporting. The log10 field
// tracks the exact value to within 1e-6 wherever the exact value fits in a
// double's range.
struct BigCount {
    BigInt exact;
    double log10 = 0.0;
};

// High-precision decimal logarithm of a non-negative integer.
double log10_of(const BigInt& v);

// m * 2^n: every (location, fact assignment) combination.
BigCount possible_states(const StateSpaceParams& p);

// Intermediate state count N = m * 2^n - 2 (ingress and egress excluded).
BigInt intermediate_states(const StateSpaceParams& p);

// Permutations of N intermediate states taken k at a time: N! / (N-k)!.
// Throws std::domain_error when k > N.
BigCount paths_with_k_intermediates(const StateSpaceParams& p, long long k);

// Sum over all path lengths: sum_{k=0}^{N} N!/(N-k)!.
BigCount exact_path_count(const StateSpaceParams& p);

// Leading-terms approximation (103/60) * N!, exact in integer arithmetic
// (N >= 5 makes N! divisible by 60); log10 computed via log-gamma.
// Throws std::domain_error when N < 5.
BigCount approx_path_count(const StateSpaceParams& p);

// Exact digits when the value has at most 40 of them, otherwise scientific
// form "d.dd × 10^E" derived from the log10 field.
std::string format_count(const BigCount& c);

} // namespace bbnet
