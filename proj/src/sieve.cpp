#include "shortvar/sieve.hpp"

#include "shortvar/primes.hpp"

namespace shortvar {

namespace detail {

u64 d_limit(const FunctionSpec& spec, u64 hi, double z) {
    u64 cap = hi;
    if (z < static_cast<double>(hi)) {
        if (z < 1.0) return 0;
        cap = static_cast<u64>(z);
    }
    return integer_kth_root(cap, spec.k);
}

void h_range(const FunctionSpec& spec, u64 dlo, u64 dhi, std::vector<double>& out) {
    if (!spec.real_valued())
        throw domain_error("h_range: sieving requires a real-valued spec");
    const u64 len = dhi - dlo + 1;
    out.assign(len, 1.0);
    std::vector<u64> rem(len);
    for (u64 i = 0; i < len; ++i) rem[i] = dlo + i;

    auto g_real = [&](u64 p) -> double {
        cplx g = spec.g_at(p);
        return g.real();
    };

    const bool mob = spec.mobius();
    for (u64 p : primes_upto(integer_kth_root(dhi, 2) + 1)) {
        const double gp = g_real(p);
        u64 start = ((dlo + p - 1) / p) * p;
        for (u64 m = start; m <= dhi; m += p) {
            u64 i = m - dlo;
            int e = 0;
            while (rem[i] % p == 0) { rem[i] /= p; ++e; }
            if (mob) {
                out[i] = (e >= 2) ? 0.0 : out[i] * (-gp);
            } else {
                double f = 1.0;
                for (int j = 0; j < e; ++j) f *= gp;
                out[i] *= f;
            }
        }
    }
    for (u64 i = 0; i < len; ++i) {
        if (rem[i] > 1) out[i] *= (mob ? -g_real(rem[i]) : g_real(rem[i]));
    }
    if (dlo <= 1 && dhi >= 1) out[1 - dlo] = 1.0;

    if (spec.alpha == 1.0) {
        for (u64 i = 0; i < len; ++i)
            if (out[i] != 0.0) out[i] /= static_cast<double>(dlo + i);
    } else if (spec.alpha != 0.0) {
        for (u64 i = 0; i < len; ++i)
            if (out[i] != 0.0) out[i] *= std::pow(static_cast<double>(dlo + i), -spec.alpha);
    }
}

namespace {

// adds h(d) at every multiple of d^k inside [lo, hi], for d in [dlo, dhi]
void add_d_block(int k, std::span<const double> h, u64 dlo, u64 lo, u64 hi, double* out) {
    for (u64 j = 0; j < h.size(); ++j) {
        const double hd = h[j];
        if (hd == 0.0) continue;
        const u64 d = dlo + j;
        // dk = d^k, guarded against overflow past hi
        u64 dk = 1;
        bool over = false;
        for (int i = 0; i < k; ++i) {
            if (dk > hi / d) { over = true; break; }
            dk *= d;
        }
        if (over || dk > hi) continue;
        for (u64 n = ((lo + dk - 1) / dk) * dk; n <= hi; n += dk) out[n - lo] += hd;
    }
}

}  // namespace

void sieve_values_with_table(const FunctionSpec& spec, std::span<const double> h_table,
                             u64 lo, u64 hi, double z, double* out) {
    const u64 len = hi - lo + 1;
    std::fill(out, out + len, 0.0);
    u64 dmax = d_limit(spec, hi, z);
    if (dmax == 0) return;
    if (dmax > h_table.size())
        throw domain_error("sieve_values_with_table: h table too short");
    add_d_block(spec.k, h_table.subspan(0, dmax), 1, lo, hi, out);
}

void sieve_values(const FunctionSpec& spec, u64 lo, u64 hi, double z, double* out) {
    const u64 len = hi - lo + 1;
    std::fill(out, out + len, 0.0);
    u64 dmax = d_limit(spec, hi, z);
    if (dmax == 0) return;
    constexpr u64 kDChunk = u64(1) << 20;
    std::vector<double> h;
    for (u64 dlo = 1; dlo <= dmax; dlo += kDChunk) {
        u64 dhi = std::min(dmax, dlo + kDChunk - 1);
        h_range(spec, dlo, dhi, h);
        add_d_block(spec.k, h, dlo, lo, hi, out);
    }
}

}  // namespace detail

namespace {

SieveSegment build_segment(const FunctionSpec& spec, u64 lo, u64 hi, double z) {
    spec.validate();
    if (lo < 1 || lo > hi) throw domain_error("sieve_f: need 1 <= lo <= hi");
    const u64 len = hi - lo + 1;
    if (len > kMaxSegmentLength)
        throw capacity_error("sieve_f: segment of " + std::to_string(len) +
                             " values exceeds the memory budget");
    SieveSegment seg;
    seg.start = lo;
    seg.values.resize(len);
    detail::sieve_values(spec, lo, hi, z, seg.values.data());
    seg.prefix.resize(len);
    KahanSum run;
    for (u64 i = 0; i < len; ++i) {
        run.add(seg.values[i]);
        seg.prefix[i] = run.value();
    }
    return seg;
}

}  // namespace

SieveSegment sieve_f(const FunctionSpec& spec, u64 lo, u64 hi) {
    return build_segment(spec, lo, hi, kNoTruncation);
}

SieveSegment sieve_f_truncated(const FunctionSpec& spec, u64 lo, u64 hi, double z) {
    if (z < 1.0) throw domain_error("sieve_f_truncated: z >= 1 required");
    return build_segment(spec, lo, hi, z);
}

double mean_value(const FunctionSpec& spec, u64 x) {
    spec.validate();
    if (x < 1) throw domain_error("mean_value: x >= 1 required");
    u64 dmax = detail::d_limit(spec, x, kNoTruncation);
    constexpr u64 kDChunk = u64(1) << 20;
    std::vector<double> h;
    KahanSum total;
    for (u64 dlo = 1; dlo <= dmax; dlo += kDChunk) {
        u64 dhi = std::min(dmax, dlo + kDChunk - 1);
        detail::h_range(spec, dlo, dhi, h);
        for (u64 j = 0; j < h.size(); ++j) {
            if (h[j] == 0.0) continue;
            u64 d = dlo + j, dk = 1;
            bool over = false;
            for (int i = 0; i < spec.k; ++i) {
                if (dk > x / d) { over = true; break; }
                dk *= d;
            }
            if (over) continue;
            total.add(h[j] * static_cast<double>(x / dk));
        }
    }
    return total.value();
}

}  // namespace shortvar
