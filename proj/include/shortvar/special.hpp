#pragma once

#include "shortvar/common.hpp"

namespace shortvar {

// Riemann zeta by Euler-Maclaurin, ~1e-13 relative inside |Im s| <= 120.
cplx zeta(cplx s);

// Gamma by Lanczos (g = 607/128, 15 terms) with reflection.
cplx gamma_fn(cplx s);
cplx log_gamma(cplx s);
// 1/Gamma, entire (returns 0 at the poles of Gamma).
cplx rgamma(cplx s);

// chi(s) = 2^s pi^(s-1) Gamma(1-s) sin(pi s / 2), the factor in
// zeta(s) = chi(s) zeta(1-s).  Poles at odd positive integers.
cplx chi(cplx s);

struct ContourSpec {
    cplx center;
    double radius = 0.05;
    int nodes = 64;
};

// Taylor coefficients c_j = f^(j)(center)/j!, j = 0..m, by the trapezoid rule
// on the contour circle (exponentially accurate for f analytic on the disk).
std::vector<cplx> cauchy_taylor_coeffs(const std::function<cplx(cplx)>& f,
                                       const ContourSpec& contour, int m);

// [chi(s), chi'(s), ..., chi^(m)(s)].
std::vector<cplx> chi_derivatives(cplx s, int m);
std::vector<cplx> chi_derivatives(cplx s, int m, const ContourSpec& contour);

// gamma_j(beta^2), j = 0..N, from  (1/z)((z-1) zeta(z))^(beta^2)
//                                   = sum_j gamma_j (z-1)^j / j!.
std::vector<cplx> taylor_gamma_coeffs(cplx beta_sq, int N, double radius = 0.4);

// Closed form of  int_0^inf x^((k+2a-1)/k) (sin(pi x)/(pi x))^2 (log x)^j dx
//   =  (-1)^(j+1)/(4 pi^2) * chi^(j)(1 + (1-2a)/k),   (2a-1)/k in (-2, 0).
double sinc_moment(int k, double alpha, int j);

}  // namespace shortvar
