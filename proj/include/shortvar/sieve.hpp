#pragma once

#include <limits>
#include <span>

#include "shortvar/spec.hpp"

namespace shortvar {

// Block of f-values (or truncated f_z-values) over [start, start+len), with
// running sums anchored at start: prefix[i] - prefix[i-1] = values[i].
struct SieveSegment {
    u64 start = 1;
    std::vector<double> values;
    std::vector<double> prefix;
};

inline constexpr u64 kMaxSegmentLength = u64(1) << 27;
inline constexpr double kNoTruncation = std::numeric_limits<double>::infinity();

SieveSegment sieve_f(const FunctionSpec& spec, u64 lo, u64 hi);
SieveSegment sieve_f_truncated(const FunctionSpec& spec, u64 lo, u64 hi, double z);

// Exact sum_{n<=x} f(n), by the divisor-order rearrangement
// sum_{d^k<=x} h(d) floor(x/d^k).
double mean_value(const FunctionSpec& spec, u64 x);

namespace detail {

// h(d) for d in [dlo, dhi]; segmented multiplicative sieve, real-valued specs.
void h_range(const FunctionSpec& spec, u64 dlo, u64 dhi, std::vector<double>& out);

// out[n - lo] = sum_{d^k | n, d^k <= z} h(d) for n in [lo, hi].
void sieve_values(const FunctionSpec& spec, u64 lo, u64 hi, double z, double* out);

// Same, with a prebuilt h-table for d <= ht_dmax (fast k >= 2 block path).
void sieve_values_with_table(const FunctionSpec& spec, std::span<const double> h_table,
                             u64 lo, u64 hi, double z, double* out);

u64 d_limit(const FunctionSpec& spec, u64 hi, double z);

}  // namespace detail

}  // namespace shortvar
