#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shortvar {

using cplx = std::complex<double>;
using u64 = std::uint64_t;
using i64 = std::int64_t;

// Error taxonomy. The CLI maps capacity_error to exit code 3 and everything
// else thrown by the library to exit code 2.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct pole_error : domain_error {
    using domain_error::domain_error;
};
struct regime_error : domain_error {
    using domain_error::domain_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Neumaier compensated summation.
struct KahanSum {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

int thread_count();  // SHORTVAR_THREADS env var, else hardware concurrency

// Runs fn(i) for i in [0, n) on a pool; fn must only touch its own slot so
// results can be merged in index order by the caller.
void parallel_for_index(u64 n, int threads, const std::function<void(u64)>& fn);

}  // namespace shortvar
