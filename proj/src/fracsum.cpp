#include "shortvar/fracsum.hpp"

#include <algorithm>
#include <numbers>

#include "shortvar/euler.hpp"
#include "shortvar/primes.hpp"
#include "shortvar/sieve.hpp"

namespace shortvar {

namespace {

constexpr double kPi = std::numbers::pi;

// {x} - {x}^2 with the near-integer snap (float noise near integer H/d^k
// otherwise dominates small-d terms).
double frac_term(double x) {
    double u = x - std::floor(x);
    if (u < 1e-12 || 1.0 - u < 1e-12) return 0.0;
    double t = u * (1.0 - u);
    if (!(t >= 0.0 && t <= 0.25 + 1e-15))
        throw convergence_error("frac_term outside [0, 1/4]");
    return t;
}

// Per-d series weights:
//   M class: w(d) = nu_h(d) = h^2(d) prod_{p|d} (1 + 2h(p)/p^k)^(-1), d squarefree
//   G class: w(d) = h^2(d)
// restricted to (d, q) = 1.  The e_h-style global prefactor is kept separate.
void weight_range(const FunctionSpec& spec, const std::vector<u64>& q_primes,
                  u64 dlo, u64 dhi, std::vector<double>& out) {
    std::vector<double> h;
    detail::h_range(spec, dlo, dhi, h);
    const u64 len = dhi - dlo + 1;
    out.assign(len, 0.0);
    for (u64 i = 0; i < len; ++i) out[i] = h[i] * h[i];
    if (spec.mobius()) {
        for (u64 p : primes_upto(dhi)) {
            cplx hp = spec.h_at_prime(p);
            double lf = 1.0 + 2.0 * hp.real() / std::pow(static_cast<double>(p), spec.k);
            if (std::abs(lf) < 1e-12)
                throw convergence_error("c_hk_of_H: vanishing local factor at p = " +
                                        std::to_string(p));
            u64 start = std::max(((dlo + p - 1) / p) * p, p);
            for (u64 m = start; m <= dhi; m += p) out[m - dlo] /= lf;
        }
    }
    for (u64 p : q_primes) {
        u64 start = ((dlo + p - 1) / p) * p;
        for (u64 m = start; m <= dhi; m += p) out[m - dlo] = 0.0;
    }
    if (dlo <= 1 && dhi >= 1) out[1 - dlo] = 1.0;
}

// Prepared series for one (spec, q): weights, t-divisor layout, prefactor.
struct FracSeries {
    FunctionSpec spec;
    std::vector<u64> q_primes;
    std::vector<u64> t_values;    // squarefree divisors of q
    std::vector<double> t_coeff;  // prod_{p|q, p !| t} (1 - 2/p)
    double prefactor = 1.0;       // e_h-style product over p !| q
    double tsum = 1.0;            // sum_t |ct| / t
    double K = 1.0;               // sup |w(d)| d^(2 alpha - 2 eps), eps = 0.01
    double decay = 1.0;           // k + 2 alpha - 1 - 2 eps
    std::vector<double> weights;  // w(d) for d = 1..weights.size()

    explicit FracSeries(const FunctionSpec& s, u64 q) : spec(s) {
        spec.validate();
        if (!(spec.alpha > 0.5 && spec.alpha < 2.0))
            throw regime_error("c_hk_of_H: bounded regime requires alpha in (1/2, 2)");
        if (q == 0) throw domain_error("c_coprime_of_H: q >= 1 required");
        for (auto& [p, e] : factorize(q)) {
            (void)e;
            q_primes.push_back(p);
        }
        if (q_primes.size() > 20)
            throw capacity_error("c_coprime_of_H: q has more than 20 prime factors");
        const size_t np = q_primes.size();
        for (u64 mask = 0; mask < (u64(1) << np); ++mask) {
            u64 t = 1;
            double coeff = 1.0;
            for (size_t i = 0; i < np; ++i) {
                if (mask & (u64(1) << i))
                    t *= q_primes[i];
                else
                    coeff *= 1.0 - 2.0 / static_cast<double>(q_primes[i]);
            }
            t_values.push_back(t);
            t_coeff.push_back(coeff);
        }
        tsum = 0.0;
        for (size_t i = 0; i < t_values.size(); ++i)
            tsum += std::abs(t_coeff[i]) / static_cast<double>(t_values[i]);
        prefactor = e_h_value_excluding(spec, q_primes);
        decay = spec.k + 2.0 * spec.alpha - 1.0 - 0.02;
        grow(4096);
        K = 0.0;
        for (u64 d = 1; d <= 4096; ++d)
            K = std::max(K, std::abs(weights[d - 1]) *
                                std::pow(static_cast<double>(d), 2.0 * spec.alpha - 0.02));
        K = std::max(K, 1e-3);
    }

    void grow(u64 D) {
        u64 have = weights.size();
        if (have >= D) return;
        std::vector<double> w;
        weight_range(spec, q_primes, have + 1, D, w);
        weights.insert(weights.end(), w.begin(), w.end());
    }

    // tail of sum_{d > D}: terms bounded by |w(d)| * tsum * H / d^k
    double tail_at(double D, double H) const {
        return std::abs(prefactor) * K * tsum * std::max(H, 1.0) *
               std::pow(D, -decay) / decay;
    }

    u64 d_needed(double H, double tol) const {
        double D = std::pow(std::abs(prefactor) * K * tsum * std::max(H, 1.0) /
                                (tol * decay),
                            1.0 / decay);
        if (D > static_cast<double>(u64(1) << 26))
            throw convergence_error("c_hk_of_H: tolerance unreachable within the d budget");
        return std::max<u64>(64, static_cast<u64>(D) + 1);
    }

    FracConstant eval(double H, double tol) const {
        if (!(tol > 0.0)) throw domain_error("c_hk_of_H: tol > 0 required");
        if (!(H >= 0.0)) throw domain_error("c_hk_of_H: H >= 0 required");
        u64 D = d_needed(H, tol);
        if (D > weights.size())
            throw convergence_error("c_hk_of_H: weights not grown far enough");
        FracConstant out;
        out.H = H;
        KahanSum acc;
        for (u64 d = 1; d <= D; ++d) {
            double wd = weights[d - 1];
            if (wd == 0.0) continue;
            const double dk = std::pow(static_cast<double>(d), spec.k);
            double s = 0.0;
            for (size_t i = 0; i < t_values.size(); ++i)
                s += t_coeff[i] * frac_term(H / (static_cast<double>(t_values[i]) * dk));
            acc.add(wd * s);
            ++out.terms_used;
        }
        out.value = prefactor * acc.value();
        out.tail_bound = tail_at(static_cast<double>(D), H);
        if (out.value < 0.0 && out.value > -1e-12) out.value = 0.0;
        if (out.value < 0.0) throw convergence_error("c_hk_of_H: negative constant");
        return out;
    }
};

}  // namespace

FracConstant c_coprime_of_H(const FunctionSpec& spec, u64 q, double H, double tol) {
    FracSeries series(spec, q);
    series.grow(series.d_needed(H, tol));
    return series.eval(H, tol);
}

FracConstant c_hk_of_H(const FunctionSpec& spec, double H, double tol) {
    return c_coprime_of_H(spec, 1, H, tol);
}

double bernoulli_identity_residual(double x, u64 N) {
    if (N < 1) throw domain_error("bernoulli_identity_residual: N >= 1 required");
    const double theta = 2.0 * kPi * x;
    const double two_cos = 2.0 * std::cos(theta);
    KahanSum acc;
    double c_prev = 1.0;
    double c_cur = std::cos(theta);
    for (u64 n = 1; n <= N; ++n) {
        if (n % 4096 == 1 && n > 1) {  // reseed the recurrence to stop drift
            c_cur = std::cos(theta * static_cast<double>(n));
            c_prev = std::cos(theta * static_cast<double>(n - 1));
        }
        acc.add(c_cur / (static_cast<double>(n) * static_cast<double>(n)));
        double c_next = two_cos * c_cur - c_prev;
        c_prev = c_cur;
        c_cur = c_next;
    }
    double frac = x - std::floor(x);
    double target = kPi * kPi * (frac * frac - frac) + kPi * kPi / 6.0;
    return std::abs(acc.value() - target);
}

std::vector<FracConstant> scan_c_of_H(const FunctionSpec& spec,
                                      const std::vector<double>& grid, double tol,
                                      int threads) {
    if (grid.empty()) throw domain_error("scan_c_of_H: grid must be nonempty");
    FracSeries series(spec, spec.coprime_q);
    double hmax = *std::max_element(grid.begin(), grid.end());
    series.grow(series.d_needed(hmax, tol));
    std::vector<FracConstant> out(grid.size());
    int t = threads > 0 ? threads : thread_count();
    parallel_for_index(grid.size(), t,
                       [&](u64 i) { out[i] = series.eval(grid[i], tol); });
    return out;
}

Mod6Layers mod6_layer_summary(const std::vector<double>& grid,
                              const std::vector<FracConstant>& values) {
    Mod6Layers lay;
    std::array<double, 6> sum{};
    std::array<u64, 6> cnt{};
    for (size_t i = 0; i < grid.size(); ++i) {
        double h = grid[i];
        if (std::abs(h - std::round(h)) > 1e-9) continue;
        int r = static_cast<int>(std::llround(h)) % 6;
        sum[r] += values[i].value;
        cnt[r] += 1;
    }
    for (int r = 0; r < 6; ++r) lay.class_mean[r] = cnt[r] ? sum[r] / cnt[r] : 0.0;
    lay.layer_center = {lay.class_mean[0],
                        0.5 * (lay.class_mean[2] + lay.class_mean[4]),
                        lay.class_mean[3],
                        0.5 * (lay.class_mean[1] + lay.class_mean[5])};
    lay.ordering_ok = lay.layer_center[0] < lay.layer_center[1] &&
                      lay.layer_center[1] < lay.layer_center[2] &&
                      lay.layer_center[2] < lay.layer_center[3];
    auto expected_layer = [](int r) {
        switch (r) {
            case 0: return 0;
            case 2: case 4: return 1;
            case 3: return 2;
            default: return 3;  // 1, 5
        }
    };
    u64 match = 0, total = 0;
    for (size_t i = 0; i < grid.size(); ++i) {
        double h = grid[i];
        if (std::abs(h - std::round(h)) > 1e-9) continue;
        int r = static_cast<int>(std::llround(h)) % 6;
        int nearest = 0;
        double best = 1e300;
        for (int l = 0; l < 4; ++l) {
            double d = std::abs(values[i].value - lay.layer_center[l]);
            if (d < best) { best = d; nearest = l; }
        }
        match += (nearest == expected_layer(r));
        ++total;
    }
    lay.match_fraction = total ? static_cast<double>(match) / total : 0.0;
    return lay;
}

}  // namespace shortvar
