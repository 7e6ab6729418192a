#pragma once

#include "shortvar/euler.hpp"
#include "shortvar/fracsum.hpp"

namespace shortvar {

enum class Regime { power_law, bounded };

struct VariancePrediction {
    FunctionSpec spec;
    double H = 0.0;
    double main_term = 0.0;   // predicted Var
    double constant_c = 0.0;  // c_{h,k} (power law) or c_{h,k}(H) (bounded)
    int poly_degree = 0;      // beta^2 - 1 in the power-law regime
    Regime regime = Regime::power_law;
};

// Leading coefficient of the power-law variance main term: Var is asymptotic
// to leading_constant * H^((1-2a)/k) (log H)^(b2-1) (1 + o(1)).  For b2 = 1
// this is the full constant c_{h,k}.  alpha in [0,1/2), integer beta.
double leading_constant(const FunctionSpec& spec);

// Main term extracted as 2 e_h times the numerical residue of
//   H^(1+s) chi(s) zeta(1-s) Q_h(k+ks) / (s(s+1))   at  s0 = (1-2a)/k - 1.
VariancePrediction main_term_residue(const FunctionSpec& spec, double H);

// Bounded regime (alpha in (1/2,2)): the H-dependent constant c_{h,k}(H).
VariancePrediction bounded_regime_constant(const FunctionSpec& spec, double H);

// lambda_j(beta^2) = (1/Gamma(b2-j)) sum_{h+i=j} L^(h)(1) gamma_i(b2)/(i! h!).
std::vector<cplx> lambda_coeffs(const FunctionSpec& spec, int N);

struct ComplexMainTerm {
    double value = 0.0;
    double truncation_estimate = 0.0;
};
// 2 H^((1-2a)/k) (log H)^(b2-1) sum_{j<=N} k^(j-b2) lambda_j / log^j H.
ComplexMainTerm complex_main_term(const FunctionSpec& spec, double H, int N);

// I_{h,alpha,gamma}(H) by direct line quadrature at Re s = gamma_line
// (-1/2 < gamma_line < 0).  Used to verify c_{h,k}(H) = 2 e_h I(H).
double i_line_integral(const FunctionSpec& spec, double H, double gamma_line,
                       int threads = 0);

}  // namespace shortvar
