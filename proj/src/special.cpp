#include "shortvar/special.hpp"

#include <array>
#include <numbers>

namespace shortvar {

namespace {

constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6,          -1.0 / 30,         1.0 / 42,          -1.0 / 30,
    5.0 / 66,         -691.0 / 2730,     7.0 / 6,           -3617.0 / 510,
    43867.0 / 798,    -174611.0 / 330,   854513.0 / 138,    -236364091.0 / 2730};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Lanczos, g = 607/128, 15 coefficients (Boost/GSL parameterization).
constexpr double kLanczosG = 4.7421875;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

cplx lanczos_sum(cplx z) {
    cplx acc = kLanczos[0];
    for (int i = 1; i < 15; ++i) acc += kLanczos[i] / (z + static_cast<double>(i - 1));
    return acc;
}

// log Gamma for Re z >= 0.5
cplx log_gamma_positive(cplx z) {
    z -= 1.0;
    cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z + 1.0));
}

// log sin(pi z) stable for large |Im z|
cplx log_sin_pi(cplx z) {
    if (std::abs(z.imag()) < 20.0) return std::log(std::sin(kPi * z));
    const cplx i(0.0, 1.0);
    if (z.imag() > 0)
        return i * kPi * z - std::log(cplx(0.0, 2.0)) + std::log(1.0 - std::exp(2.0 * i * kPi * z));
    return -i * kPi * z - std::log(cplx(0.0, -2.0)) + std::log(1.0 - std::exp(-2.0 * i * kPi * z));
}

cplx log_cos_pi_half(cplx s) {
    // log cos(pi s / 2)
    cplx z = kPi * s / 2.0;
    if (std::abs(z.imag()) < 20.0) return std::log(std::cos(z));
    const cplx i(0.0, 1.0);
    if (z.imag() > 0) return -i * z - std::log(2.0) + std::log(1.0 + std::exp(2.0 * i * z));
    return i * z - std::log(2.0) + std::log(1.0 + std::exp(-2.0 * i * z));
}

bool near_integer(cplx s, double tol = 1e-13) {
    return std::abs(s.imag()) < tol && std::abs(s.real() - std::round(s.real())) < tol;
}

}  // namespace

cplx log_gamma(cplx s) {
    if (near_integer(s) && s.real() <= 0.5)
        throw pole_error("log_gamma: pole at non-positive integer");
    if (s.real() >= 0.5) return log_gamma_positive(s);
    // reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1-s)
    return std::log(kPi) - log_sin_pi(s) - log_gamma_positive(1.0 - s);
}

cplx gamma_fn(cplx s) {
    if (near_integer(s) && s.real() <= 0.5)
        throw pole_error("gamma: pole at non-positive integer");
    if (std::abs(s.imag()) > 50.0) return std::exp(log_gamma(s));
    if (s.real() >= 0.5) {
        cplx z = s - 1.0;
        cplx t = z + kLanczosG + 0.5;
        return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z + 1.0);
    }
    return kPi / (std::sin(kPi * s) * gamma_fn(1.0 - s));
}

cplx rgamma(cplx s) {
    if (near_integer(s) && s.real() <= 0.5) return 0.0;
    return 1.0 / gamma_fn(s);
}

cplx zeta(cplx s) {
    if (near_integer(s) && std::abs(s - cplx(1.0, 0.0)) < 1e-13)
        throw pole_error("zeta: pole at s = 1");
    constexpr int J = 12;
    const double t = std::abs(s.imag());
    const u64 N = static_cast<u64>(std::max(32.0, 0.56 * (t + 25.0) + 24.0));
    cplx out = 0.0;
    {
        // direct block, summed small-to-large
        KahanSum re, im;
        for (u64 n = N - 1; n >= 1; --n) {
            cplx term = std::pow(static_cast<double>(n), -s);
            re.add(term.real());
            im.add(term.imag());
        }
        out = cplx(re.value(), im.value());
    }
    const double Nd = static_cast<double>(N);
    out += std::pow(Nd, 1.0 - s) / (s - 1.0);
    out += 0.5 * std::pow(Nd, -s);
    cplx poch = s;  // s (s+1) ... rising
    for (int j = 1; j <= J; ++j) {
        out += kBernoulli[j - 1] / factorial(2 * j) * poch * std::pow(Nd, -s - (2.0 * j - 1.0));
        poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    }
    return out;
}

cplx chi(cplx s) {
    if (near_integer(s)) {
        double r = std::round(s.real());
        if (r >= 1.0 && std::fmod(r, 2.0) == 1.0)
            throw pole_error("chi: pole at odd positive integer s = " + std::to_string((long)r));
    }
    if (std::abs(s.imag()) < 25.0) {
        // chi(s) = 2^(s-1) pi^s / (Gamma(s) cos(pi s / 2))
        return std::pow(2.0, s - 1.0) * std::pow(kPi, s) * rgamma(s) / std::cos(kPi * s / 2.0);
    }
    cplx lg = (s - 1.0) * std::log(2.0) + s * std::log(kPi) - log_gamma(s) - log_cos_pi_half(s);
    return std::exp(lg);
}

std::vector<cplx> cauchy_taylor_coeffs(const std::function<cplx(cplx)>& f,
                                       const ContourSpec& contour, int m) {
    if (contour.nodes < 16) throw domain_error("cauchy_taylor_coeffs: nodes >= 16 required");
    if (!(contour.radius > 0.0)) throw domain_error("cauchy_taylor_coeffs: radius must be positive");
    const int n = contour.nodes;
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * kPi * (i + 0.5) / n;
        vals[i] = f(contour.center + contour.radius * std::polar(1.0, th));
    }
    std::vector<cplx> coeffs(m + 1);
    for (int j = 0; j <= m; ++j) {
        KahanSum re, im;
        for (int i = 0; i < n; ++i) {
            double th = 2.0 * kPi * (i + 0.5) / n;
            cplx term = vals[i] * std::polar(1.0, -j * th);
            re.add(term.real());
            im.add(term.imag());
        }
        coeffs[j] = cplx(re.value(), im.value()) / (static_cast<double>(n) * std::pow(contour.radius, j));
    }
    return coeffs;
}

std::vector<cplx> chi_derivatives(cplx s, int m, const ContourSpec& contour) {
    // keep the disk clear of chi's poles (odd positive integers)
    double dist = 1e30;
    for (double pole = 1.0; pole <= s.real() + 4.0; pole += 2.0)
        dist = std::min(dist, std::abs(s - cplx(pole, 0.0)));
    if (contour.radius >= dist)
        throw domain_error("chi_derivatives: contour touches a pole of chi");
    auto coeffs = cauchy_taylor_coeffs([](cplx z) { return chi(z); }, contour, m);
    std::vector<cplx> out(m + 1);
    double fact = 1.0;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) fact *= j;
        out[j] = coeffs[j] * fact;
    }
    if (m >= 0) out[0] = chi(s);  // order 0 exactly from the direct formula
    return out;
}

std::vector<cplx> chi_derivatives(cplx s, int m) {
    double dist = 1e30;
    for (double pole = 1.0; pole <= s.real() + 4.0; pole += 2.0)
        dist = std::min(dist, std::abs(s - cplx(pole, 0.0)));
    ContourSpec c{s, std::min(0.35, 0.5 * dist), 128};
    return chi_derivatives(s, m, c);
}

std::vector<cplx> taylor_gamma_coeffs(cplx beta_sq, int N, double radius) {
    if (N < 0) throw domain_error("taylor_gamma_coeffs: N >= 0 required");
    if (!(radius > 0.0 && radius < 0.9))
        throw domain_error("taylor_gamma_coeffs: radius in (0, 0.9) required");
    ContourSpec c{cplx(1.0, 0.0), radius, 160};
    auto f = [beta_sq](cplx z) {
        cplx w = (z - 1.0) * zeta(z);  // entire, = 1 at z = 1
        return std::pow(w, beta_sq) / z;
    };
    auto coeffs = cauchy_taylor_coeffs(f, c, N);
    std::vector<cplx> out(N + 1);
    double fact = 1.0;
    for (int j = 0; j <= N; ++j) {
        if (j > 0) fact *= j;
        out[j] = coeffs[j] * fact;
    }
    return out;
}

double sinc_moment(int k, double alpha, int j) {
    if (k < 1 || j < 0) throw domain_error("sinc_moment: k >= 1 and j >= 0 required");
    double z = (2.0 * alpha - 1.0) / k;
    if (!(z > -2.0 && z < 0.0))
        throw domain_error("sinc_moment: (2 alpha - 1)/k must lie in (-2, 0)");
    cplx arg(1.0 + (1.0 - 2.0 * alpha) / k, 0.0);
    cplx val = chi_derivatives(arg, j)[j];
    double sign = (j % 2 == 0) ? -1.0 : 1.0;  // (-1)^(j+1)
    return sign * val.real() / (4.0 * kPi * kPi);
}

}  // namespace shortvar
