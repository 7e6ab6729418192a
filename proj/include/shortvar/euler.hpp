#pragma once

#include "shortvar/spec.hpp"

namespace shortvar {

struct EulerProductValue {
    cplx value;
    u64 prime_cutoff = 0;
    double tail_bound = 0.0;
};

// P(e) = sum_p p^-e, Re(e) > 1.
cplx prime_zeta(cplx e);

// ctilde_{h,k} = sum_d h(d)/d^k as an Euler product.
double tilde_c(const FunctionSpec& spec);
// Truncated mean sum_{d^k <= z} h(d)/d^k (direct summation).
double tilde_c_truncated(const FunctionSpec& spec, double z);

// e_h = prod (1 + 2h(p)/p^k)  (M class)  or  prod (p^k+h)/(p^k-h)  (G class).
double e_h_value(const FunctionSpec& spec);
// Same with the primes dividing q left out (coprime subfamilies).
double e_h_value_excluding(const FunctionSpec& spec, const std::vector<u64>& skip);

// B(s), D(s): the section-2 products entering the leading constant.
EulerProductValue euler_product_B(const FunctionSpec& spec, cplx s, double tol);
EulerProductValue euler_product_D(const FunctionSpec& spec, cplx s, double tol);
// Dispatches on the class variant.
EulerProductValue euler_product_BD(const FunctionSpec& spec, cplx s, double tol);

// Q_h(s) and its pole-stripped companion:
//   Q_h(s) = zeta(s + 2 alpha)^(beta^2) * q_h_regular(s).
cplx q_h(const FunctionSpec& spec, cplx s);
cplx q_h_regular(const FunctionSpec& spec, cplx s, double tol = 1e-12);

// Exact single-prime factors (exposed for tests).
cplx local_factor_B(const FunctionSpec& spec, u64 p, cplx s);
cplx local_factor_D(const FunctionSpec& spec, u64 p, cplx s);
cplx local_factor_Q(const FunctionSpec& spec, u64 p, cplx s);

// nu_h at a prime: the coefficient of the Dirichlet series Q_h(s).
cplx nu_h_prime(const FunctionSpec& spec, u64 p);
// f_h(r) = prod_{p^k | r, p <= prime_cutoff} (local factor); r = 0 means all p.
double f_h(const FunctionSpec& spec, u64 r, u64 prime_cutoff);
// e_h truncated to p <= prime_cutoff (for the R(H) oracle).
double e_h_truncated(const FunctionSpec& spec, u64 prime_cutoff);

}  // namespace shortvar
