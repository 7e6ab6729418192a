#include "shortvar/primes.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

namespace shortvar {

namespace {

struct PrimeCache {
    std::mutex mu;
    std::atomic<const std::vector<u64>*> current{nullptr};
    std::vector<std::unique_ptr<std::vector<u64>>> generations;
    std::atomic<u64> limit{0};
};

PrimeCache& cache() {
    static PrimeCache c;
    return c;
}

std::vector<u64> sieve_primes(u64 limit) {
    std::vector<std::uint8_t> comp(limit + 1, 0);
    std::vector<u64> out;
    for (u64 i = 2; i <= limit; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) comp[j] = 1;
    }
    return out;
}

}  // namespace

std::span<const u64> primes_upto(u64 limit) {
    auto& c = cache();
    if (c.limit.load(std::memory_order_acquire) >= limit) {
        const auto* v = c.current.load(std::memory_order_acquire);
        auto end = std::upper_bound(v->begin(), v->end(), limit);
        return {v->data(), static_cast<size_t>(end - v->begin())};
    }
    std::lock_guard<std::mutex> lock(c.mu);
    if (c.limit.load() < limit) {
        u64 grow = std::max<u64>(limit, std::max<u64>(2 * c.limit.load(), 1 << 16));
        auto fresh = std::make_unique<std::vector<u64>>(sieve_primes(grow));
        c.current.store(fresh.get(), std::memory_order_release);
        c.generations.push_back(std::move(fresh));  // old spans stay alive
        c.limit.store(grow, std::memory_order_release);
    }
    const auto* v = c.current.load(std::memory_order_acquire);
    auto end = std::upper_bound(v->begin(), v->end(), limit);
    return {v->data(), static_cast<size_t>(end - v->begin())};
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> f;
    if (n <= 1) return f;
    for (u64 p : primes_upto(static_cast<u64>(std::sqrt(static_cast<double>(n))) + 2)) {
        if (p * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : primes_upto(static_cast<u64>(std::sqrt(static_cast<double>(n))) + 2)) {
        if (p * p > n) break;
        if (n % p == 0) return n == p;
    }
    return true;
}

void mobius_range(u64 dlo, u64 dhi, std::vector<int>& out) {
    const u64 len = dhi - dlo + 1;
    out.assign(len, 1);
    std::vector<u64> rem(len);
    for (u64 i = 0; i < len; ++i) rem[i] = dlo + i;
    for (u64 p : primes_upto(static_cast<u64>(std::sqrt(static_cast<double>(dhi))) + 2)) {
        u64 start = ((dlo + p - 1) / p) * p;
        for (u64 m = start; m <= dhi; m += p) {
            u64 i = m - dlo;
            int e = 0;
            while (rem[i] % p == 0) { rem[i] /= p; ++e; }
            if (e >= 2) out[i] = 0;
            else if (e == 1) out[i] = -out[i];
        }
    }
    for (u64 i = 0; i < len; ++i)
        if (rem[i] > 1) out[i] = -out[i];
    if (dlo == 0) out[0] = 0;
    if (dlo <= 1 && dhi >= 1) out[1 - dlo] = 1;
}

u64 integer_kth_root(u64 n, int k) {
    if (n == 0) return 0;
    if (k == 1) return n;
    u64 r = static_cast<u64>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pw = [&](u64 b) -> u64 {
        u64 acc = 1;
        for (int i = 0; i < k; ++i) {
            if (b != 0 && acc > n / b + 1) return n + 1;
            acc *= b;
            if (acc > n) return n + 1;
        }
        return acc;
    };
    while (r > 0 && pw(r) > n) --r;
    while (pw(r + 1) <= n) ++r;
    return r;
}

}  // namespace shortvar
