#pragma once

#include <optional>

#include "shortvar/spec.hpp"

namespace shortvar {

// Admissible short-interval exponents for a (k, alpha) pair.
struct ExponentProfile {
    int k = 2;
    double alpha = 0.0;
    std::optional<double> nu;
    std::optional<double> e;
    std::optional<double> g;
    std::optional<double> e_hat;
    std::optional<double> g_hat;
    double theta = 0.0;
};

double nu_exponent(int k, double alpha);     // k >= 3, alpha in [0,1/2) u (1/2,1)
double e_exponent(int k, double alpha);      // k >= 2, alpha in [0,1/2)
double g_exponent(int k);                    // k >= 2
double e_hat_exponent(int k, double alpha);  // k >= 1, alpha in (1/2,2)
double g_hat_exponent(int k, double alpha);  // k >= 1, alpha in (1/2,2)
double theta_exponent(int k, double alpha);  // discrete-variance exponent, <= 1/2

ExponentProfile exponent_profile(int k, double alpha);

enum class RangeMode { unconditional, lindelof, discrete };

// (H_min, H_max) = (2, X^(E - eps0)) with E the regime-appropriate exponent.
std::pair<double, double> admissible_range(const FunctionSpec& spec, double X,
                                           RangeMode mode, double eps0 = 0.01);

// Residual of the balancing condition f2(nu) = f3(nu) that defines nu
// implicitly for k >= 3, alpha in [0,1/2).
double nu_balance_residual(int k, double alpha);

}  // namespace shortvar
