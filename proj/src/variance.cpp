#include "shortvar/variance.hpp"

#include <chrono>
#include <numeric>

#include "shortvar/exponents.hpp"
#include "shortvar/primes.hpp"
#include "shortvar/sieve.hpp"

namespace shortvar {

namespace {

using clock_type = std::chrono::steady_clock;

constexpr u64 kBlockLen = u64(1) << 22;  // m-range per block, thread-count independent

struct SweepConfig {
    u64 x0 = 1, x1 = 2;  // window anchors m in [x0, x1)
    u64 Hi = 2;          // floor(H)
    double phi = 0.0;    // frac(H); 0 = integer-H fast path
    double cH = 0.0;     // subtracted mean (ctilde * H or its truncated version)
    double z = kNoTruncation;   // keep d^k <= z
    double zmin = 0.0;          // drop d^k <= zmin (complement sieves)
};

// sieve of f with both cut directions: d^k in (zmin, z]
void sieve_two_sided(const FunctionSpec& spec, u64 lo, u64 hi, double zmin, double z,
                     std::vector<double>& out) {
    out.resize(hi - lo + 1);
    detail::sieve_values(spec, lo, hi, z, out.data());
    if (zmin >= 1.0) {
        std::vector<double> low(hi - lo + 1);
        detail::sieve_values(spec, lo, hi, zmin, low.data());
        for (size_t i = 0; i < out.size(); ++i) out[i] -= low[i];
    }
}

// sum over m in [b0, b1) of the (possibly two-piece) squared window deviation
double sweep_block(const FunctionSpec& spec, const SweepConfig& cfg, u64 b0, u64 b1) {
    const u64 len = (b1 - b0) + cfg.Hi + 2;
    std::vector<double> v;
    sieve_two_sided(spec, b0 + 1, b0 + len, cfg.zmin, cfg.z, v);
    // window W(m) = sum_{n=m+1}^{m+Hi} f(n); v[i] = f(b0+1+i)
    KahanSum wsum;
    for (u64 i = 0; i < cfg.Hi; ++i) wsum.add(v[i]);
    double w = wsum.value();
    KahanSum acc;
    const bool two_piece = cfg.phi > 0.0;
    u64 since_refresh = 0;
    for (u64 m = b0; m < b1; ++m) {
        const u64 base = m - b0;
        if (two_piece) {
            double d1 = w - cfg.cH;
            double d2 = (w + v[base + cfg.Hi]) - cfg.cH;
            acc.add((1.0 - cfg.phi) * d1 * d1 + cfg.phi * d2 * d2);
        } else {
            double d1 = w - cfg.cH;
            acc.add(d1 * d1);
        }
        // slide
        w += v[base + cfg.Hi] - v[base];
        if (++since_refresh == 65536 && m + 1 < b1) {
            since_refresh = 0;
            KahanSum fresh;
            for (u64 i = 0; i < cfg.Hi; ++i) fresh.add(v[m + 1 - b0 + i]);
            w = fresh.value();
        }
    }
    return acc.value();
}

double window_square_mean(const FunctionSpec& spec, const SweepConfig& cfg, int threads,
                          u64* samples_out) {
    if (!spec.real_valued())
        throw domain_error("variance measurement requires a real-valued spec");
    const u64 total = cfg.x1 - cfg.x0;
    const u64 n_blocks = (total + kBlockLen - 1) / kBlockLen;
    std::vector<double> partial(n_blocks, 0.0);
    int t = threads > 0 ? threads : thread_count();
    parallel_for_index(n_blocks, t, [&](u64 bi) {
        u64 b0 = cfg.x0 + bi * kBlockLen;
        u64 b1 = std::min(cfg.x1, b0 + kBlockLen);
        partial[bi] = sweep_block(spec, cfg, b0, b1);
    });
    KahanSum acc;
    for (double p : partial) acc.add(p);  // deterministic merge in block order
    if (samples_out) *samples_out = total;
    return acc.value() / static_cast<double>(total);
}

void fill_range_warning(const FunctionSpec& spec, u64 X, double H, VarianceMode mode,
                        VarianceReport& rep) {
    try {
        RangeMode rm = (mode == VarianceMode::discrete) ? RangeMode::discrete
                                                        : RangeMode::unconditional;
        auto [hmin, hmax] = admissible_range(spec, static_cast<double>(X), rm);
        if (H < hmin || H > hmax) {
            rep.range_warning = true;
            rep.warning = "H outside the admissible range (2, " + std::to_string(hmax) + ")";
        }
    } catch (const domain_error& e) {
        rep.range_warning = true;
        rep.warning = std::string("no admissible-range exponent: ") + e.what();
    }
}

}  // namespace

VarianceReport discrete_variance(const FunctionSpec& spec, u64 X, u64 H, int threads) {
    spec.validate();
    if (H < 2) throw domain_error("discrete_variance: H >= 2 required");
    if (X < 1) throw domain_error("discrete_variance: X >= 1 required");
    auto tic = clock_type::now();
    SweepConfig cfg;
    cfg.x0 = 1;
    cfg.x1 = X + 1;
    cfg.Hi = H;
    cfg.phi = 0.0;
    cfg.cH = tilde_c(spec) * static_cast<double>(H);
    VarianceReport rep;
    rep.spec = spec;
    rep.X = X;
    rep.H = static_cast<double>(H);
    rep.mode = VarianceMode::discrete;
    rep.measured = window_square_mean(spec, cfg, threads, &rep.samples);
    rep.elapsed_seconds = std::chrono::duration<double>(clock_type::now() - tic).count();
    fill_range_warning(spec, X, rep.H, rep.mode, rep);
    return rep;
}

VarianceReport continuous_variance(const FunctionSpec& spec, u64 X, double H, int threads) {
    spec.validate();
    if (!(H >= 2.0)) throw domain_error("continuous_variance: H >= 2 required");
    if (X < 2) throw domain_error("continuous_variance: X >= 2 required");
    auto tic = clock_type::now();
    SweepConfig cfg;
    cfg.x0 = X;
    cfg.x1 = 2 * X;
    cfg.Hi = static_cast<u64>(std::floor(H));
    cfg.phi = H - std::floor(H);
    cfg.cH = tilde_c(spec) * H;
    VarianceReport rep;
    rep.spec = spec;
    rep.X = X;
    rep.H = H;
    rep.mode = VarianceMode::continuous;
    rep.measured = window_square_mean(spec, cfg, threads, &rep.samples);
    rep.elapsed_seconds = std::chrono::duration<double>(clock_type::now() - tic).count();
    fill_range_warning(spec, X, H, rep.mode, rep);
    return rep;
}

std::pair<VarianceReport, VarianceReport> truncated_variances(const FunctionSpec& spec,
                                                              u64 X, double H, double z,
                                                              int threads) {
    spec.validate();
    if (!(z >= 1.0 && z <= 2.0 * static_cast<double>(X)))
        throw domain_error("truncated_variances: need 1 <= z <= 2X");
    if (!(H >= 2.0)) throw domain_error("truncated_variances: H >= 2 required");
    const double ctilde = tilde_c(spec);
    const double ctrunc = tilde_c_truncated(spec, z);

    auto run = [&](double zmin, double zmax, double mean, VarianceMode mode) {
        auto tic = clock_type::now();
        SweepConfig cfg;
        cfg.x0 = X;
        cfg.x1 = 2 * X;
        cfg.Hi = static_cast<u64>(std::floor(H));
        cfg.phi = H - std::floor(H);
        cfg.cH = mean * H;
        cfg.z = zmax;
        cfg.zmin = zmin;
        VarianceReport rep;
        rep.spec = spec;
        rep.X = X;
        rep.H = H;
        rep.mode = mode;
        rep.z = z;
        rep.measured = window_square_mean(spec, cfg, threads, &rep.samples);
        rep.elapsed_seconds = std::chrono::duration<double>(clock_type::now() - tic).count();
        return rep;
    };
    VarianceReport J = run(0.0, z, ctrunc, VarianceMode::truncated_J);
    VarianceReport K = run(z, kNoTruncation, ctilde - ctrunc, VarianceMode::truncated_K);
    return {J, K};
}

RIdentity brute_force_R(const FunctionSpec& spec, u64 H, u64 prime_cutoff, u64 d_cutoff) {
    spec.validate();
    if (H < 1 || H > 1000) throw domain_error("brute_force_R: 1 <= H <= 1000 required");
    if (!spec.real_valued()) throw domain_error("brute_force_R: real-valued spec required");

    // P-smooth d <= d_cutoff with h(d) != 0
    std::vector<double> h;
    detail::h_range(spec, 1, d_cutoff, h);
    std::vector<u64> ds;
    std::vector<double> hv;
    for (u64 d = 1; d <= d_cutoff; ++d) {
        if (h[d - 1] == 0.0) continue;
        bool smooth = true;
        for (auto& [p, e] : factorize(d)) {
            (void)e;
            if (p > prime_cutoff) { smooth = false; break; }
        }
        if (smooth) {
            ds.push_back(d);
            hv.push_back(h[d - 1]);
        }
    }

    // cnt(m) = #{(j1,j2) in [1,H]^2 : m | |j1-j2|}
    auto cnt = [&](u64 m) -> double {
        double c = static_cast<double>(H);
        for (u64 t = 1; m * t <= H - 1; ++t) c += 2.0 * static_cast<double>(H - m * t);
        return c;
    };

    KahanSum lhs;
    for (size_t i = 0; i < ds.size(); ++i) {
        for (size_t j = 0; j < ds.size(); ++j) {
            u64 g = std::gcd(ds[i], ds[j]);
            u64 l = ds[i] / g * ds[j];
            double gk = std::pow(static_cast<double>(g), spec.k);
            double lk = std::pow(static_cast<double>(l), spec.k);
            double c = (gk <= static_cast<double>(H)) ? cnt(static_cast<u64>(gk))
                                                      : static_cast<double>(H);
            lhs.add(hv[i] * hv[j] / lk * c);
        }
    }

    const double eh = e_h_truncated(spec, prime_cutoff);
    // S(H) = sum_{n<H} sum_{l<=n} f_h(l) = sum_{l<H} (H-l) f_h(l)
    KahanSum ssum;
    for (u64 l = 1; l + 1 <= H; ++l) ssum.add(static_cast<double>(H - l) * f_h(spec, l, prime_cutoff));
    double rhs = eh * f_h(spec, 0, prime_cutoff) * static_cast<double>(H) + 2.0 * eh * ssum.value();

    // Bound on the omitted P-smooth pairs with max(d1,d2) > d_cutoff, via
    //   sum_e |h(e)|^2 e^-k (H + H^2 e^-k) T(cutoff/e) A,   T(y) = sum_{b>y} |h(b)| b^-k
    // with smoothness dropped (upper bound).
    const double eps = 0.01;
    u64 scan = std::max<u64>(4 * d_cutoff, 4096);
    std::vector<double> habs_v;
    detail::h_range(spec, 1, scan, habs_v);
    double Kh = 0.0;
    KahanSum Asum;
    for (u64 d = 1; d <= scan; ++d) {
        double a = std::abs(habs_v[d - 1]);
        Kh = std::max(Kh, a * std::pow(static_cast<double>(d), spec.alpha - eps));
        Asum.add(a * std::pow(static_cast<double>(d), -static_cast<double>(spec.k)));
    }
    double decayA = spec.k + spec.alpha - 1.0 - eps;
    double A = Asum.value() + Kh * std::pow(static_cast<double>(scan), -decayA) / decayA;
    auto T = [&](double y) {
        if (y < 1.0) return A;
        double val = 0.0;
        u64 y64 = static_cast<u64>(y);
        if (y64 < scan) {
            for (u64 d = y64 + 1; d <= scan; ++d)
                val += std::abs(habs_v[d - 1]) * std::pow(static_cast<double>(d),
                                                          -static_cast<double>(spec.k));
        }
        double from = std::max(y, static_cast<double>(scan));
        return val + Kh * std::pow(from, -decayA) / decayA;
    };
    double bound = 0.0;
    for (u64 e = 1; e <= scan; ++e) {
        double he2 = habs_v[e - 1] * habs_v[e - 1];
        if (he2 == 0.0) continue;
        double ek = std::pow(static_cast<double>(e), spec.k);
        double w = static_cast<double>(H) / ek + static_cast<double>(H) * static_cast<double>(H) / (ek * ek);
        bound += 2.0 * he2 * w * T(static_cast<double>(d_cutoff) / e) * A;
    }
    return {lhs.value(), rhs, bound};
}

VarianceReport compare(const FunctionSpec& spec, u64 X, double H, VarianceMode mode,
                       int threads) {
    VarianceReport rep;
    if (mode == VarianceMode::discrete) {
        double hr = std::round(H);
        if (std::abs(H - hr) > 1e-9)
            throw domain_error("compare: discrete mode needs integer H");
        rep = discrete_variance(spec, X, static_cast<u64>(hr), threads);
    } else if (mode == VarianceMode::continuous) {
        rep = continuous_variance(spec, X, H, threads);
    } else {
        throw domain_error("compare: use truncated_variances for the truncated modes");
    }
    if (spec.alpha < 0.5) {
        rep.predicted = main_term_residue(spec, H).main_term;
    } else {
        rep.predicted = bounded_regime_constant(spec, H).main_term;
    }
    rep.ratio = (rep.predicted != 0.0) ? rep.measured / rep.predicted : 0.0;
    return rep;
}

double continuous_variance_quadrature(const FunctionSpec& spec, u64 X, double H,
                                      double abs_tol) {
    spec.validate();
    // pointwise integrand via a prefix table over [X+1, 2X + ceil(H) + 1]
    const u64 hi = 2 * X + static_cast<u64>(std::ceil(H)) + 1;
    SieveSegment seg = sieve_f(spec, X + 1, hi);
    const double ctH = tilde_c(spec) * H;
    auto S = [&](double x) -> double {
        // sum_{n <= x} f(n) - sum_{n <= X} f(n), for x in [X, hi]
        u64 fx = static_cast<u64>(std::floor(x));
        if (fx <= X) return 0.0;
        return seg.prefix[fx - (X + 1)];
    };
    auto integrand = [&](double x) {
        double w = S(x + H) - S(x) - ctH;
        return w * w;
    };
    // adaptive Simpson per unit interval
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double a, double b, double fa, double fm, double fb, double tol, int depth) {
            double m = 0.5 * (a + b);
            double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            double flm = integrand(lm), frm = integrand(rm);
            double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return rec(a, m, fa, flm, fm, tol * 0.5, depth + 1) +
                   rec(m, b, fm, frm, fb, tol * 0.5, depth + 1);
        };
    KahanSum total;
    const double per_unit = abs_tol / static_cast<double>(X);
    for (u64 m = X; m < 2 * X; ++m) {
        double a = static_cast<double>(m), b = a + 1.0;
        double fa = integrand(a + 1e-12), fm = integrand(0.5 * (a + b)), fb = integrand(b - 1e-12);
        total.add(rec(a, b, fa, fm, fb, per_unit, 0));
    }
    return total.value() / static_cast<double>(X);
}

}  // namespace shortvar
