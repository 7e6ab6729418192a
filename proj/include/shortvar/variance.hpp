#pragma once

#include <optional>

#include "shortvar/mainterm.hpp"

namespace shortvar {

enum class VarianceMode { continuous, discrete, truncated_J, truncated_K };

struct VarianceReport {
    FunctionSpec spec;
    u64 X = 0;
    double H = 0.0;
    double measured = 0.0;
    double predicted = 0.0;
    double ratio = 0.0;
    VarianceMode mode = VarianceMode::continuous;
    std::optional<double> z;
    u64 samples = 0;
    double elapsed_seconds = 0.0;
    bool range_warning = false;
    std::string warning;
};

// (1/X) sum_{n<=X} ( sum_{j=1..H} f(n+j) - ctilde H )^2, exact.
VarianceReport discrete_variance(const FunctionSpec& spec, u64 X, u64 H, int threads = 0);

// (1/X) int_X^2X | sum_{x<n<=x+H} f(n) - ctilde H |^2 dx, exact
// (breakpoint sweep; the integrand is piecewise constant in x).
VarianceReport continuous_variance(const FunctionSpec& spec, u64 X, double H, int threads = 0);

// Restricted variances J_{k,z} (d^k <= z, truncated mean) and K_{k,z}
// (d^k > z, tail mean), both continuous.
std::pair<VarianceReport, VarianceReport> truncated_variances(const FunctionSpec& spec,
                                                              u64 X, double H, double z,
                                                              int threads = 0);

// Both sides of the R(H) identity under a shared truncation (primes <= prime_cutoff,
// P-smooth d <= d_cutoff), plus a computed bound on the truncation gap.
struct RIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double tail_bound = 0.0;
};
RIdentity brute_force_R(const FunctionSpec& spec, u64 H, u64 prime_cutoff, u64 d_cutoff);

// Measurement + regime-correct prediction + ratio; warns (does not error)
// when H falls outside the admissible range.
VarianceReport compare(const FunctionSpec& spec, u64 X, double H, VarianceMode mode,
                       int threads = 0);

// Test oracle: adaptive-quadrature evaluation of the continuous-variance
// integrand (pointwise window sums, no sweep structure shared).
double continuous_variance_quadrature(const FunctionSpec& spec, u64 X, double H,
                                      double abs_tol);

}  // namespace shortvar
