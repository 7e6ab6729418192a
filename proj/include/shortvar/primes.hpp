#pragma once

#include <span>

#include "shortvar/common.hpp"

namespace shortvar {

// Primes up to at least `limit`, from a process-wide cache that only grows.
// The returned span stays valid (the cache never shrinks or moves once a
// limit has been published).
std::span<const u64> primes_upto(u64 limit);

// Trial-division factorization, exponents in increasing prime order.
std::vector<std::pair<u64, int>> factorize(u64 n);

bool is_prime(u64 n);

// mu(d) for d in [dlo, dhi]; out[i] = mu(dlo + i).
void mobius_range(u64 dlo, u64 dhi, std::vector<int>& out);

// floor(n^(1/k)) computed exactly.
u64 integer_kth_root(u64 n, int k);

}  // namespace shortvar
