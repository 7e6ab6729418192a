#include "shortvar/mainterm.hpp"

#include <numbers>

#include "shortvar/primes.hpp"
#include "shortvar/sieve.hpp"
#include "shortvar/special.hpp"

namespace shortvar {

namespace {

constexpr double kPi = std::numbers::pi;

int integer_beta_sq(const FunctionSpec& spec) {
    cplx b2 = spec.beta_sq();
    double r = std::round(b2.real());
    if (std::abs(b2.imag()) > 1e-9 || std::abs(b2.real() - r) > 1e-9 || r < 1.0)
        throw domain_error("beta^2 must be a positive integer here; see complex_main_term");
    return static_cast<int>(r);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double leading_constant(const FunctionSpec& spec) {
    spec.validate();
    if (!(spec.alpha >= 0.0 && spec.alpha < 0.5))
        throw regime_error("leading_constant: power-law regime requires alpha in [0,1/2)");
    const int b2 = integer_beta_sq(spec);
    const double k = spec.k;
    const double s0 = (1.0 - 2.0 * spec.alpha) / k - 1.0;
    double bd = euler_product_BD(spec, s0, 1e-13).value.real();
    double chi_v = chi(cplx(2.0 + s0, 0.0)).real();
    double zeta_v = zeta(cplx(1.0 - s0, 0.0)).real();
    return -2.0 / (std::pow(k, b2) * 4.0 * kPi * kPi * factorial(b2 - 1)) * bd * chi_v * zeta_v;
}

VariancePrediction main_term_residue(const FunctionSpec& spec, double H) {
    spec.validate();
    if (!(spec.alpha >= 0.0 && spec.alpha < 0.5))
        throw regime_error("main_term_residue: power-law regime requires alpha in [0,1/2)");
    if (!(H >= 2.0)) throw domain_error("main_term_residue: H >= 2 required");
    const int b2 = integer_beta_sq(spec);
    const double k = spec.k;
    const double s0 = (1.0 - 2.0 * spec.alpha) / k - 1.0;
    const double r = (1.0 - 2.0 * spec.alpha) / (4.0 * k);
    // circle must clear the poles at s = 0, s = -1 and stay inside the
    // convergence half-plane of q_h_regular(k + ks)
    if (!(std::abs(s0) > r && (1.0 - 2.0 * spec.alpha) / k > r))
        throw convergence_error("main_term_residue: contour touches a singularity");

    const double eh = e_h_value(spec);
    const int nodes = 64;
    KahanSum racc, iacc;
    for (int i = 0; i < nodes; ++i) {
        double th = 2.0 * kPi * (i + 0.5) / nodes;
        cplx ds = std::polar(r, th);
        cplx s = s0 + ds;
        cplx w = k + k * s;
        cplx zk = zeta(w + 2.0 * spec.alpha);
        cplx zpow = 1.0;
        for (int j = 0; j < b2; ++j) zpow *= zk;
        cplx f = std::pow(H, 1.0 + s) * chi(s) * zeta(1.0 - s) * zpow *
                 q_h_regular(spec, w) / (s * (s + 1.0));
        cplx term = f * ds;
        racc.add(term.real());
        iacc.add(term.imag());
    }
    cplx residue(racc.value() / nodes, iacc.value() / nodes);
    double main = 2.0 * eh * residue.real();
    if (std::abs(2.0 * eh * residue.imag()) > 1e-8 * std::abs(main) + 1e-300)
        throw convergence_error("main_term_residue: residue has a non-negligible imaginary part");

    VariancePrediction pred;
    pred.spec = spec;
    pred.H = H;
    pred.main_term = main;
    pred.constant_c = leading_constant(spec);
    pred.poly_degree = b2 - 1;
    pred.regime = Regime::power_law;
    return pred;
}

VariancePrediction bounded_regime_constant(const FunctionSpec& spec, double H) {
    spec.validate();
    if (!(spec.alpha > 0.5 && spec.alpha < 2.0))
        throw regime_error("bounded_regime_constant: requires alpha in (1/2,2)");
    if (!(H >= 1.0)) throw domain_error("bounded_regime_constant: H >= 1 required");
    FracConstant c = c_hk_of_H(spec, H, 1e-10);
    VariancePrediction pred;
    pred.spec = spec;
    pred.H = H;
    pred.main_term = c.value;
    pred.constant_c = c.value;
    pred.poly_degree = 0;
    pred.regime = Regime::bounded;
    return pred;
}

std::vector<cplx> lambda_coeffs(const FunctionSpec& spec, int N) {
    spec.validate();
    if (N < 0) throw domain_error("lambda_coeffs: N >= 0 required");
    if (!(spec.alpha >= 0.0 && spec.alpha < 0.5))
        throw regime_error("lambda_coeffs: requires alpha in [0,1/2)");
    const cplx b2 = spec.beta_sq();
    const double k = spec.k;
    const double a = spec.alpha;

    auto gam = taylor_gamma_coeffs(b2, N);

    // L(z) = z zeta(2-(z-2a)/k) {B|D}(-1+(z-2a)/k) M(-1+(z-2a)/k), where
    // M(w) = -chi(2+w)/(4 pi^2) is the sinc-moment Mellin transform standing
    // in for the paper's w-hat(arg/(2 pi i)) factors.
    auto L = [&](cplx z) {
        cplx w = -1.0 + (z - 2.0 * a) / k;
        cplx bd = euler_product_BD(spec, w, 1e-12).value;
        return z * zeta(2.0 - (z - 2.0 * a) / k) * bd * (-chi(2.0 + w) / (4.0 * kPi * kPi));
    };
    double rho = std::min(0.30, 0.45 * (1.0 - 2.0 * a));
    ContourSpec contour{cplx(1.0, 0.0), rho, 96};
    auto lc = cauchy_taylor_coeffs(L, contour, N);  // lc[h] = L^(h)(1)/h!

    std::vector<cplx> lam(N + 1);
    for (int j = 0; j <= N; ++j) {
        cplx arg = b2 - static_cast<double>(j);
        // 1/Gamma has zeros at non-positive integers: lambda_j = 0 exactly
        if (std::abs(arg.imag()) < 1e-12 &&
            std::abs(arg.real() - std::round(arg.real())) < 1e-12 &&
            std::round(arg.real()) <= 0.0) {
            lam[j] = 0.0;
            continue;
        }
        cplx acc = 0.0;
        for (int h = 0; h <= j; ++h) {
            int i = j - h;
            // L^(h)(1)/h! = lc[h]; gamma_i/(i!) = gam[i]/i!
            acc += lc[h] * gam[i] / factorial(i);
        }
        cplx ginv;
        if (std::abs(arg.imag()) < 1e-12 &&
            std::abs(arg.real() - std::round(arg.real())) < 1e-12) {
            ginv = 1.0 / factorial(static_cast<int>(std::round(arg.real())) - 1);
        } else {
            ginv = rgamma(arg);
        }
        lam[j] = ginv * acc;
    }
    return lam;
}

ComplexMainTerm complex_main_term(const FunctionSpec& spec, double H, int N) {
    spec.validate();
    if (!(H >= 2.0)) throw domain_error("complex_main_term: H >= 2 required");
    cplx b2 = spec.beta_sq();
    if (!(b2.real() > 0.0))
        throw domain_error("complex_main_term: Re(beta^2) > 0 required");
    if (N < static_cast<int>(std::ceil(b2.real())))
        throw domain_error("complex_main_term: N >= ceil(Re(beta^2)) required");
    auto lam = lambda_coeffs(spec, N);
    const double k = spec.k;
    const double L = std::log(H);
    cplx total = 0.0;
    cplx last = 0.0;
    for (int j = 0; j <= N; ++j) {
        cplx term = std::pow(k, static_cast<double>(j) - b2) * lam[j] * std::pow(L, -j);
        total += term;
        last = term;
    }
    cplx scale = 2.0 * std::pow(H, (1.0 - 2.0 * spec.alpha) / k) * std::pow(L, b2 - 1.0);
    ComplexMainTerm out;
    out.value = (scale * total).real();
    out.truncation_estimate = std::abs(scale) * std::abs(last) * std::max(1.0, k) / L;
    return out;
}

double i_line_integral(const FunctionSpec& spec, double H, double gamma_line, int threads) {
    spec.validate();
    if (!(gamma_line > -0.5 && gamma_line < 0.0))
        throw domain_error("i_line_integral: need -1/2 < gamma < 0");
    if (!(H >= 1.0)) throw domain_error("i_line_integral: H >= 1 required");
    const double k = spec.k;

    // Split the Dirichlet series of Q_h(k+ks) at D with D^k >= 2H.
    //  * d with d^k | H are dropped: their Mellin integrals vanish identically
    //    (split zeta(s) at n <= x and shift right through s = 0, 1).
    //  * d > D is shifted right analytically: (H/2) Q_{>D}(k) - (H^2/2) Q_{>D}(2k).
    const u64 D = integer_kth_root(static_cast<u64>(std::ceil(2.0 * H)), spec.k) + 1;
    std::vector<double> h;
    detail::h_range(spec, 1, D, h);
    std::vector<double> nu(D + 1, 0.0);
    for (u64 d = 1; d <= D; ++d) {
        if (spec.mobius()) {
            double num = h[d - 1] * h[d - 1];
            if (num == 0.0) continue;
            double corr = 1.0;
            for (auto& [p, e] : factorize(d)) {
                (void)e;
                corr *= 1.0 + 2.0 * spec.h_at_prime(p).real() /
                                  std::pow(static_cast<double>(p), spec.k);
            }
            nu[d] = num / corr;
        } else {
            nu[d] = h[d - 1] * h[d - 1];
        }
    }
    const bool H_integral = std::abs(H - std::round(H)) < 1e-9;
    std::vector<u64> kept;
    for (u64 d = 1; d <= D; ++d) {
        if (nu[d] == 0.0) continue;
        bool divides = false;
        if (H_integral) {
            const u64 Hi = static_cast<u64>(std::llround(H));
            u64 dk = 1;
            bool over = false;
            for (int i = 0; i < spec.k; ++i) {
                if (d != 0 && dk > Hi / d) { over = true; break; }
                dk *= d;
            }
            divides = !over && dk >= 1 && Hi % dk == 0;
        }
        if (!divides) kept.push_back(d);
    }

    // analytic right-shift of the d > D part
    double Qk_tail = q_h(spec, cplx(k, 0.0)).real();
    double Q2k_tail = q_h(spec, cplx(2.0 * k, 0.0)).real();
    for (u64 d = 1; d <= D; ++d) {
        Qk_tail -= nu[d] * std::pow(static_cast<double>(d), -k);
        Q2k_tail -= nu[d] * std::pow(static_cast<double>(d), -2.0 * k);
    }
    double shifted = 0.5 * H * Qk_tail - 0.5 * H * H * Q2k_tail;

    // tapered midpoint quadrature over the kept Dirichlet polynomial
    const double T0 = std::max(4.5 * 2.0 * kPi * H, 400.0);
    const double T1 = 2.0 * T0;
    const double dt = 0.02;
    const u64 n_nodes = static_cast<u64>(T1 / dt);
    const u64 chunk = 8192;
    const u64 n_chunks = (n_nodes + chunk - 1) / chunk;
    std::vector<double> partial(n_chunks, 0.0);
    int t = threads > 0 ? threads : thread_count();
    parallel_for_index(n_chunks, t, [&](u64 ci) {
        KahanSum acc;
        u64 i0 = ci * chunk, i1 = std::min(n_nodes, i0 + chunk);
        for (u64 i = i0; i < i1; ++i) {
            double tt = (static_cast<double>(i) + 0.5) * dt;
            cplx s(gamma_line, tt);
            cplx w = -(k + k * s);
            cplx Q = 0.0;
            for (u64 d : kept) Q += nu[d] * std::pow(static_cast<double>(d), w);
            cplx F = std::pow(H, 1.0 + s) * chi(s) * zeta(1.0 - s) * Q / (s * (s + 1.0));
            double wgt = 1.0;
            if (tt > T0) {
                double u = std::cos(0.5 * kPi * (tt - T0) / (T1 - T0));
                wgt = u * u;
            }
            acc.add(F.real() * wgt);
        }
        partial[ci] = acc.value();
    });
    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value() * dt / kPi + shifted;
}

}  // namespace shortvar
