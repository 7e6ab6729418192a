#include "shortvar/spec.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "shortvar/primes.hpp"

namespace shortvar {

namespace {

bool int_like(cplx z) {
    return std::abs(z.imag()) < 1e-12 && std::abs(z.real() - std::round(z.real())) < 1e-12;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

}  // namespace

void FunctionSpec::validate() const {
    if (k < 1) throw domain_error("FunctionSpec: k >= 1 required");
    if (!(alpha >= 0.0 && alpha < 2.0)) throw domain_error("FunctionSpec: alpha in [0,2) required");
    if (std::abs(alpha - 0.5) < 1e-12) throw domain_error("FunctionSpec: alpha = 1/2 excluded");
    if (!(alpha + k > 1.5)) throw domain_error("FunctionSpec: alpha + k > 3/2 required");
    if (std::abs(beta) == 0.0) throw domain_error("FunctionSpec: beta = 0 not in the class");
    if (sign != 1.0 && sign != -1.0) throw domain_error("FunctionSpec: sign must be +1 or -1");
    for (const auto& [p, eta] : exceptional) {
        (void)eta;
        if (!is_prime(p)) throw domain_error("FunctionSpec: exceptional key " + std::to_string(p) + " is not prime");
    }
    if (character_mod < 0) throw domain_error("FunctionSpec: character_mod >= 0 required");
    if (has_character()) {
        if (character.size() != static_cast<size_t>(character_mod))
            throw domain_error("FunctionSpec: character table must have character_mod entries");
        for (int r = 0; r < character_mod; ++r) {
            if (std::gcd(static_cast<u64>(r), static_cast<u64>(character_mod)) != 1 &&
                character[r] != 0.0)
                throw domain_error("FunctionSpec: psi(r) must vanish when gcd(r, q) > 1");
        }
    }
    if (coprime_q < 1) throw domain_error("FunctionSpec: coprime_q >= 1 required");
}

cplx FunctionSpec::g_at(u64 p) const {
    cplx g = sign * beta;
    if (auto it = exceptional.find(p); it != exceptional.end()) g = it->second;
    return g * psi(p);
}

cplx FunctionSpec::h_at_prime(u64 p) const {
    cplx g = g_at(p);
    double pa = (alpha == 0.0) ? 1.0 : std::pow(static_cast<double>(p), alpha);
    return (mobius() ? -g : g) / pa;
}

bool FunctionSpec::real_valued() const {
    if (std::abs(beta.imag()) > 1e-15) return false;
    for (const auto& [p, eta] : exceptional) {
        (void)p;
        if (std::abs(eta.imag()) > 1e-15) return false;
    }
    return true;
}

bool FunctionSpec::integer_valued_h() const {
    if (alpha != 0.0 || has_character()) return false;
    if (!int_like(beta)) return false;
    for (const auto& [p, eta] : exceptional) {
        (void)p;
        if (!int_like(eta)) return false;
    }
    return true;
}

cplx h_value(const FunctionSpec& spec, u64 d) {
    if (d == 0) throw domain_error("h_value: d >= 1 required");
    if (d == 1) return 1.0;
    cplx g_part = 1.0;
    for (const auto& [p, e] : factorize(d)) {
        if (spec.mobius()) {
            if (e >= 2) return 0.0;
            g_part *= -spec.g_at(p);
        } else {
            g_part *= std::pow(spec.g_at(p), e);
        }
    }
    if (spec.alpha == 0.0) return g_part;
    return g_part / std::pow(static_cast<double>(d), spec.alpha);
}

cplx f_value(const FunctionSpec& spec, u64 n) {
    if (n == 0) throw domain_error("f_value: n >= 1 required");
    auto fac = factorize(n);
    // enumerate d with d^k | n from the capped exponent vector
    std::vector<int> cap;
    std::vector<u64> pr;
    for (const auto& [p, e] : fac) {
        int c = e / spec.k;
        if (c > 0) { cap.push_back(c); pr.push_back(p); }
    }
    cplx total = 0.0;
    std::vector<int> expo(cap.size(), 0);
    for (;;) {
        u64 d = 1;
        for (size_t i = 0; i < pr.size(); ++i)
            for (int j = 0; j < expo[i]; ++j) d *= pr[i];
        total += h_value(spec, d);
        size_t i = 0;
        while (i < cap.size()) {
            if (++expo[i] <= cap[i]) break;
            expo[i] = 0;
            ++i;
        }
        if (i == cap.size()) break;
    }
    return total;
}

FunctionSpec preset(const std::string& name) {
    FunctionSpec s;
    s.label = name;
    auto head = name.substr(0, name.find(':'));
    auto args = name.find(':') == std::string::npos ? std::string() : name.substr(name.find(':') + 1);

    if (head == "squarefree") {
        s.k = 2; s.alpha = 0.0; s.beta = 1.0; s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
    } else if (head == "kfree") {
        int k = args.empty() ? 2 : std::atoi(args.c_str());
        if (k < 2) throw domain_error("preset kfree:k requires k >= 2");
        s.k = k; s.alpha = 0.0; s.beta = 1.0; s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
    } else if (head == "phi-over-n") {
        s.k = 1; s.alpha = 1.0; s.beta = 1.0; s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
    } else if (head == "sigma") {
        if (args.empty()) throw domain_error("preset sigma:a requires an exponent argument");
        double a = std::atof(args.c_str());
        if (!(a > -2.0 && a < -0.5))
            throw domain_error("preset sigma:a requires a in (-2, -1/2)");
        s.k = 1; s.alpha = -a; s.beta = 1.0; s.sign = 1.0;
        s.variant = Variant::completely_multiplicative;
    } else if (head == "sign-omega-k") {
        int k = args.empty() ? 2 : std::atoi(args.c_str());
        if (k < 2) throw domain_error("preset sign-omega-k:k requires k >= 2");
        s.k = k; s.alpha = 0.0; s.beta = 2.0; s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
    } else if (head == "schemmel") {
        int m = args.empty() ? 2 : std::atoi(args.c_str());
        if (m < 1) throw domain_error("preset schemmel:m requires m >= 1");
        s.k = 1; s.alpha = 1.0; s.beta = static_cast<double>(m); s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
        u64 q = 1;
        for (u64 p : primes_upto(static_cast<u64>(m))) q *= p;
        s.coprime_q = q;
    } else if (head == "totient-character") {
        auto parts = split(args, ',');
        if (parts.size() < 2) throw domain_error("preset totient-character:q,v0,...,v(q-1)");
        int q = std::atoi(parts[0].c_str());
        if (q < 2 || parts.size() != static_cast<size_t>(q) + 1)
            throw domain_error("preset totient-character: need q followed by q values");
        s.k = 1; s.alpha = 1.0; s.beta = 1.0; s.sign = 1.0;
        s.variant = Variant::mobius_twisted;
        s.character_mod = q;
        s.character.resize(q);
        for (int i = 0; i < q; ++i) s.character[i] = std::atof(parts[i + 1].c_str());
    } else {
        throw domain_error("unknown preset: " + name);
    }
    s.validate();
    return s;
}

std::vector<std::string> preset_names() {
    return {"squarefree", "kfree:k", "phi-over-n", "sigma:alpha", "sign-omega-k:k",
            "schemmel:m", "totient-character:q,list"};
}

}  // namespace shortvar
