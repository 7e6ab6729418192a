#include "shortvar/euler.hpp"

#include <algorithm>

#include "shortvar/primes.hpp"
#include "shortvar/sieve.hpp"
#include "shortvar/special.hpp"

namespace shortvar {

namespace {

constexpr int kMobiusSmall[] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1,
                                1, 0, -1, 0, -1, 0, 1, 1, -1, 0, 0, 1, 0, 0, -1,
                                -1, -1, 0, 1, 1, 1, 0, -1, 1, 1, 0, -1, -1, -1, 0,
                                0, 1, -1, 0, 0, 0};

struct TailTerm {
    cplx coef;
    cplx expo;
    bool odd_g = false;  // odd power of g(p): skipped for character-twisted specs
};

struct ProductSetup {
    std::function<cplx(u64)> local;
    std::vector<TailTerm> tails;
    std::vector<TailTerm> neglected;  // |coef| estimates of the first dropped terms
    std::vector<u64> skip;            // primes left out of the product entirely
};

// upper bound for sum_{p > P} p^-a, a > 1
double pz_tail_bound(double P, double a) {
    if (a <= 1.0) return 1e300;
    return 1.3 * std::pow(P, 1.0 - a) / ((a - 1.0) * std::log(P));
}

EulerProductValue eval_product(const ProductSetup& setup, const FunctionSpec& spec,
                               double tol, u64 p_start) {
    const bool skip_odd = spec.has_character();
    constexpr u64 kPMax = u64(1) << 23;

    double min_expo = 1e300;
    for (const auto& t : setup.tails)
        if (!(skip_odd && t.odd_g)) min_expo = std::min(min_expo, t.expo.real());
    if (min_expo <= 1.0)
        throw domain_error("euler product: evaluation point outside the convergence strip");

    auto bound_at = [&](double P) {
        double b = 0.0;
        for (const auto& t : setup.neglected) b += std::abs(t.coef) * pz_tail_bound(P, t.expo.real());
        if (skip_odd)
            for (const auto& t : setup.tails)
                if (t.odd_g) b += std::abs(t.coef) * pz_tail_bound(P, t.expo.real());
        return b;
    };

    u64 P = p_start;
    while (bound_at(static_cast<double>(P)) > tol) {
        if (P >= kPMax)
            throw convergence_error("euler product: cannot meet tolerance " + std::to_string(tol));
        P *= 2;
    }
    for (u64 p : setup.skip)
        if (p > P) throw domain_error("euler product: skip prime beyond cutoff");

    auto primes = primes_upto(P);
    cplx log_head = 0.0;
    for (u64 p : primes) {
        if (std::find(setup.skip.begin(), setup.skip.end(), p) != setup.skip.end()) continue;
        cplx lf = setup.local(p);
        if (std::abs(lf) < 1e-300)
            throw convergence_error("euler product: vanishing local factor at p = " + std::to_string(p));
        log_head += std::log(lf);
    }
    cplx corr = 0.0;
    for (const auto& t : setup.tails) {
        if (skip_odd && t.odd_g) continue;
        cplx tail_sum = prime_zeta(t.expo);
        for (u64 p : primes) tail_sum -= std::pow(static_cast<double>(p), -t.expo);
        corr += t.coef * tail_sum;
    }
    return {std::exp(log_head + corr), P, bound_at(static_cast<double>(P))};
}

// sign*beta as a real number for the generic-prime tail coefficients
cplx generic_g(const FunctionSpec& spec) { return spec.sign * spec.beta; }

double habs(const FunctionSpec& spec) {
    double m = std::abs(spec.beta);
    for (const auto& [p, eta] : spec.exceptional) {
        (void)p;
        m = std::max(m, std::abs(eta));
    }
    return std::max(m, 1.0);
}

// tail terms of log prod (1 + 2h(p)/p^k)  [M]  or  log prod (p^k+h)/(p^k-h)  [G]
void e_h_tails(const FunctionSpec& spec, ProductSetup& setup) {
    const cplx g = generic_g(spec);
    const double a = spec.alpha + spec.k;
    const double babs = habs(spec);
    if (spec.mobius()) {
        setup.tails.push_back({-2.0 * g, a, true});
        setup.tails.push_back({-2.0 * g * g, 2.0 * a, false});
        setup.tails.push_back({-(8.0 / 3.0) * g * g * g, 3.0 * a, true});
        setup.neglected.push_back({4.0 * std::pow(babs, 4), 4.0 * a});
    } else {
        setup.tails.push_back({2.0 * g, a, true});
        setup.tails.push_back({(2.0 / 3.0) * g * g * g, 3.0 * a, true});
        setup.neglected.push_back({0.4 * std::pow(babs, 5), 5.0 * a});
    }
}

// tail terms of log q_h_regular at s (u = s + 2 alpha)
void q_reg_tails(const FunctionSpec& spec, cplx s, ProductSetup& setup) {
    const cplx g = generic_g(spec);
    const cplx b2 = spec.beta_sq();
    const cplx u = s + 2.0 * spec.alpha;
    const double a = spec.alpha + spec.k;
    const double babs = habs(spec);
    if (spec.mobius()) {
        setup.tails.push_back({2.0 * g * b2, u + a, true});
        setup.tails.push_back({4.0 * b2 * b2, u + 2.0 * a, false});
        setup.tails.push_back({-0.5 * (b2 * b2 + b2), 2.0 * u, false});
        setup.tails.push_back({-2.0 * g * b2 * b2, 2.0 * u + a, true});
        setup.tails.push_back({(b2 * b2 * b2 - b2) / 3.0, 3.0 * u, false});
        setup.tails.push_back({-0.25 * (std::pow(b2, 4) + b2), 4.0 * u, false});
        setup.neglected.push_back({0.2 * (std::pow(babs, 10) + babs * babs), 5.0 * u.real()});
        setup.neglected.push_back({8.0 * std::pow(babs, 5), u.real() + 3.0 * a});
        setup.neglected.push_back({6.0 * std::pow(babs, 7), 3.0 * u.real() + a});
        setup.neglected.push_back({8.0 * std::pow(babs, 6), 2.0 * u.real() + 2.0 * a});
    } else {
        setup.tails.push_back({0.5 * (b2 * b2 - b2), 2.0 * u, false});
        setup.tails.push_back({(b2 * b2 * b2 - b2) / 3.0, 3.0 * u, false});
        setup.tails.push_back({0.25 * (std::pow(b2, 4) - b2), 4.0 * u, false});
        setup.neglected.push_back({0.4 * (std::pow(babs, 10) + babs * babs), 5.0 * u.real()});
    }
}

cplx cpow_int_aware(cplx base, cplx expo) {
    if (std::abs(expo.imag()) < 1e-14 &&
        std::abs(expo.real() - std::round(expo.real())) < 1e-14) {
        long n = static_cast<long>(std::llround(expo.real()));
        if (n >= 0 && n <= 64) {
            cplx acc = 1.0;
            for (long i = 0; i < n; ++i) acc *= base;
            return acc;
        }
    }
    return std::pow(base, expo);
}

}  // namespace

cplx prime_zeta(cplx e) {
    if (e.real() <= 1.0) throw domain_error("prime_zeta: Re(e) > 1 required");
    cplx out = 0.0;
    for (int m = 1; m <= 50; ++m) {
        if ((m * e).real() > 45.0) break;
        int mu = kMobiusSmall[m];
        if (mu == 0) continue;
        out += static_cast<double>(mu) / m * std::log(zeta(static_cast<double>(m) * e));
    }
    return out;
}

cplx nu_h_prime(const FunctionSpec& spec, u64 p) {
    cplx h = spec.h_at_prime(p);
    double pk = std::pow(static_cast<double>(p), spec.k);
    if (spec.mobius()) return pk * h * h / (pk + 2.0 * h);
    return h * h;
}

cplx local_factor_Q(const FunctionSpec& spec, u64 p, cplx s) {
    cplx ps = std::pow(static_cast<double>(p), -s);
    if (spec.mobius()) return 1.0 + nu_h_prime(spec, p) * ps;
    cplx h = spec.h_at_prime(p);
    return 1.0 / (1.0 - h * h * ps);
}

cplx local_factor_B(const FunctionSpec& spec, u64 p, cplx s) {
    cplx h = spec.h_at_prime(p);
    double pd = static_cast<double>(p);
    double pk = std::pow(pd, spec.k);
    cplx pkks = std::pow(pd, -(static_cast<double>(spec.k) + static_cast<double>(spec.k) * s));
    cplx strip = 1.0 - std::pow(pd, -(static_cast<double>(spec.k) +
                                      static_cast<double>(spec.k) * s + 2.0 * spec.alpha));
    return (1.0 + 2.0 * h / pk + h * h * pkks) * cpow_int_aware(strip, spec.beta_sq());
}

cplx local_factor_D(const FunctionSpec& spec, u64 p, cplx s) {
    cplx h = spec.h_at_prime(p);
    double pd = static_cast<double>(p);
    double pk = std::pow(pd, spec.k);
    cplx pkks = std::pow(pd, -(static_cast<double>(spec.k) + static_cast<double>(spec.k) * s));
    cplx strip = 1.0 - std::pow(pd, -(static_cast<double>(spec.k) +
                                      static_cast<double>(spec.k) * s + 2.0 * spec.alpha));
    return 1.0 / (1.0 - h * h * pkks) * cpow_int_aware(strip, spec.beta_sq()) *
           (1.0 - h * h / (pk * pk)) / ((1.0 - h / pk) * (1.0 - h / pk));
}

double tilde_c(const FunctionSpec& spec) {
    spec.validate();
    const cplx g = generic_g(spec);
    const double a = spec.alpha + spec.k;
    const double babs = habs(spec);
    ProductSetup setup;
    if (spec.mobius()) {
        setup.local = [&](u64 p) {
            return 1.0 + spec.h_at_prime(p) / std::pow(static_cast<double>(p), spec.k);
        };
        setup.tails.push_back({-g, a, true});
        setup.tails.push_back({-0.5 * g * g, 2.0 * a, false});
        setup.tails.push_back({-g * g * g / 3.0, 3.0 * a, true});
        setup.neglected.push_back({0.25 * std::pow(babs, 4), 4.0 * a});
    } else {
        setup.local = [&](u64 p) {
            return 1.0 / (1.0 - spec.h_at_prime(p) / std::pow(static_cast<double>(p), spec.k));
        };
        setup.tails.push_back({g, a, true});
        setup.tails.push_back({0.5 * g * g, 2.0 * a, false});
        setup.tails.push_back({g * g * g / 3.0, 3.0 * a, true});
        setup.neglected.push_back({0.25 * std::pow(babs, 4), 4.0 * a});
    }
    double tol = spec.has_character() ? 1e-9 : 1e-13;
    auto v = eval_product(setup, spec, tol, 10000);
    return v.value.real();
}

double tilde_c_truncated(const FunctionSpec& spec, double z) {
    if (z < 1.0) return 0.0;
    u64 dmax = integer_kth_root(static_cast<u64>(z), spec.k);
    KahanSum acc;
    constexpr u64 kChunk = u64(1) << 20;
    std::vector<double> h;
    for (u64 dlo = 1; dlo <= dmax; dlo += kChunk) {
        u64 dhi = std::min(dmax, dlo + kChunk - 1);
        detail::h_range(spec, dlo, dhi, h);
        for (u64 j = 0; j < h.size(); ++j) {
            if (h[j] == 0.0) continue;
            double d = static_cast<double>(dlo + j);
            acc.add(h[j] * std::pow(d, -static_cast<double>(spec.k)));
        }
    }
    return acc.value();
}

double e_h_value_excluding(const FunctionSpec& spec, const std::vector<u64>& skip) {
    spec.validate();
    ProductSetup setup;
    if (spec.mobius()) {
        setup.local = [&](u64 p) {
            return 1.0 + 2.0 * spec.h_at_prime(p) / std::pow(static_cast<double>(p), spec.k);
        };
    } else {
        setup.local = [&](u64 p) {
            cplx h = spec.h_at_prime(p);
            double pk = std::pow(static_cast<double>(p), spec.k);
            return (pk + h) / (pk - h);
        };
    }
    e_h_tails(spec, setup);
    setup.skip = skip;
    double tol = spec.has_character() ? 1e-9 : 1e-13;
    auto v = eval_product(setup, spec, tol, 10000);
    return v.value.real();
}

double e_h_value(const FunctionSpec& spec) { return e_h_value_excluding(spec, {}); }

EulerProductValue euler_product_B(const FunctionSpec& spec, cplx s, double tol) {
    spec.validate();
    double strip = (1.0 - 4.0 * spec.alpha - 2.0 * spec.k) / (2.0 * spec.k);
    if (!(s.real() > strip))
        throw domain_error("euler_product_B: Re(s) outside the absolute-convergence strip");
    ProductSetup setup;
    setup.local = [&](u64 p) { return local_factor_B(spec, p, s); };
    e_h_tails(spec, setup);
    q_reg_tails(spec, static_cast<double>(spec.k) * (1.0 + s), setup);
    return eval_product(setup, spec, tol, 10000);
}

EulerProductValue euler_product_D(const FunctionSpec& spec, cplx s, double tol) {
    spec.validate();
    double strip = (1.0 - 4.0 * spec.alpha - 2.0 * spec.k) / (2.0 * spec.k);
    if (!(s.real() > strip))
        throw domain_error("euler_product_D: Re(s) outside the absolute-convergence strip");
    const cplx g = generic_g(spec);
    const double a = spec.alpha + spec.k;
    const double babs = habs(spec);
    ProductSetup setup;
    setup.local = [&](u64 p) { return local_factor_D(spec, p, s); };
    setup.tails.push_back({2.0 * g, a, true});
    setup.tails.push_back({(2.0 / 3.0) * g * g * g, 3.0 * a, true});
    setup.neglected.push_back({0.4 * std::pow(babs, 5), 5.0 * a});
    q_reg_tails(spec, static_cast<double>(spec.k) * (1.0 + s), setup);
    return eval_product(setup, spec, tol, 10000);
}

EulerProductValue euler_product_BD(const FunctionSpec& spec, cplx s, double tol) {
    return spec.mobius() ? euler_product_B(spec, s, tol) : euler_product_D(spec, s, tol);
}

cplx q_h_regular(const FunctionSpec& spec, cplx s, double tol) {
    spec.validate();
    ProductSetup setup;
    const cplx b2 = spec.beta_sq();
    setup.local = [&](u64 p) {
        cplx strip = 1.0 - std::pow(static_cast<double>(p), -(s + 2.0 * spec.alpha));
        return local_factor_Q(spec, p, s) * cpow_int_aware(strip, b2);
    };
    q_reg_tails(spec, s, setup);
    return eval_product(setup, spec, tol, 10000).value;
}

cplx q_h(const FunctionSpec& spec, cplx s) {
    return cpow_int_aware(zeta(s + 2.0 * spec.alpha), spec.beta_sq()) * q_h_regular(spec, s);
}

double f_h(const FunctionSpec& spec, u64 r, u64 prime_cutoff) {
    double out = 1.0;
    for (u64 p : primes_upto(prime_cutoff)) {
        if (r != 0) {
            // need p^k | r
            u64 pk = 1;
            bool over = false;
            for (int i = 0; i < spec.k; ++i) {
                if (pk > r / p) { over = true; break; }
                pk *= p;
            }
            if (over || r % pk != 0) continue;
        }
        double pk = std::pow(static_cast<double>(p), spec.k);
        cplx h = spec.h_at_prime(p);
        cplx lf = spec.mobius() ? 1.0 + h * h / (pk + 2.0 * h) : 1.0 / (1.0 - h * h / pk);
        out *= lf.real();
    }
    return out;
}

double e_h_truncated(const FunctionSpec& spec, u64 prime_cutoff) {
    double out = 1.0;
    for (u64 p : primes_upto(prime_cutoff)) {
        double pk = std::pow(static_cast<double>(p), spec.k);
        cplx h = spec.h_at_prime(p);
        cplx lf = spec.mobius() ? 1.0 + 2.0 * h / pk : (pk + h) / (pk - h);
        out *= lf.real();
    }
    return out;
}

}  // namespace shortvar
