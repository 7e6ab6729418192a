#pragma once

#include <map>
#include <optional>

#include "shortvar/common.hpp"

namespace shortvar {

enum class Variant {
    mobius_twisted,            // h(d) = mu(d) g(d) / d^alpha
    completely_multiplicative  // h(d) = g(d) / d^alpha
};

// One member of the class F_{alpha,beta,k}:  f(n) = sum_{d^k | n} h(d),
// g(p) = sign*beta off the exceptional set, eta_p on it, optionally twisted
// by a real periodic character psi mod character_mod.
struct FunctionSpec {
    int k = 2;
    double alpha = 0.0;
    cplx beta{1.0, 0.0};
    double sign = 1.0;
    Variant variant = Variant::mobius_twisted;
    std::map<u64, cplx> exceptional;  // p -> eta
    int character_mod = 0;            // 0 = no twist
    std::vector<double> character;    // psi(r), r = 0..character_mod-1
    u64 coprime_q = 1;                // sieving modulus for coprime subfamilies
    std::string label = "custom";

    void validate() const;  // throws domain_error on violated invariants

    cplx beta_sq() const { return beta * beta; }
    bool mobius() const { return variant == Variant::mobius_twisted; }
    bool has_character() const { return character_mod > 1; }
    double psi(u64 n) const {
        return has_character() ? character[n % static_cast<u64>(character_mod)] : 1.0;
    }
    cplx g_at(u64 p) const;       // sign*beta or eta, times psi(p)
    cplx h_at_prime(u64 p) const; // h(p)
    bool real_valued() const;     // h real on all primes
    // true when h takes exact small-integer values (alpha = 0, integer beta/eta)
    bool integer_valued_h() const;
};

cplx h_value(const FunctionSpec& spec, u64 d);
cplx f_value(const FunctionSpec& spec, u64 n);

// Named presets:
//   squarefree | kfree:K | phi-over-n | sigma:A | sign-omega-k:K |
//   schemmel:M | totient-character:Q,v0,v1,...,v(Q-1)
FunctionSpec preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace shortvar
