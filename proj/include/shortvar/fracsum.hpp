#pragma once

#include <array>

#include "shortvar/spec.hpp"

namespace shortvar {

struct FracConstant {
    double value = 0.0;
    double H = 0.0;
    u64 terms_used = 0;
    double tail_bound = 0.0;
};

// c_{h,k}(H): the bounded-regime variance constant, alpha in (1/2, 2).
FracConstant c_hk_of_H(const FunctionSpec& spec, double H, double tol);

// The q-coprime deformation; q = 1 reduces to c_hk_of_H (same code path).
FracConstant c_coprime_of_H(const FunctionSpec& spec, u64 q, double H, double tol);

// | sum_{n<=N} cos(2 pi n x)/n^2 - pi^2({x}^2 - {x}) - zeta(2) |
double bernoulli_identity_residual(double x, u64 N);

std::vector<FracConstant> scan_c_of_H(const FunctionSpec& spec,
                                      const std::vector<double>& grid,
                                      double tol = 1e-7, int threads = 0);

// Four-layer mod-6 structure of the integer-H scan: class means, layer
// centers {6n} < {6n+2,6n+4} < {6n+3} < {6n+1,6n+5}, and the fraction of
// grid points whose nearest layer is the one its residue class predicts.
struct Mod6Layers {
    std::array<double, 6> class_mean{};
    std::array<double, 4> layer_center{};
    double match_fraction = 0.0;
    bool ordering_ok = false;
};
Mod6Layers mod6_layer_summary(const std::vector<double>& grid,
                              const std::vector<FracConstant>& values);

}  // namespace shortvar
