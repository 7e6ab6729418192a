#include "shortvar/exponents.hpp"

namespace shortvar {

namespace {

bool in_low_range(double a) { return a >= 0.0 && a < 0.5; }
bool in_high_range(double a) { return a > 0.5 && a < 2.0; }

void check01(double v, const char* what) {
    if (!(v > 0.0 && v <= 1.0))
        throw convergence_error(std::string(what) + " fell outside (0, 1]");
}

}  // namespace

double nu_exponent(int k, double alpha) {
    if (k < 3) throw domain_error("nu: defined for k >= 3 only");
    double nu;
    if (in_low_range(alpha)) {
        double A = 2.0 * k - 2.5 + 5.0 * alpha;
        double B = (k - 2.0) * (k + 2.0 * alpha - 1.0);
        nu = (-A + std::sqrt(A * A + 4.0 * k * B * A)) / (2.0 * B);
    } else if (alpha > 0.5 && alpha < 1.0) {
        nu = (-2.0 * alpha + 2.0 * std::sqrt(alpha * alpha + alpha * k * (k - 2.0))) / (k - 2.0);
    } else {
        throw domain_error("nu: alpha must lie in [0,1/2) or (1/2,1)");
    }
    if (!(nu > 1.0 && nu <= 2.0))
        throw convergence_error("nu fell outside (1, 2]");
    return nu;
}

double e_exponent(int k, double alpha) {
    if (k < 2) throw domain_error("e: k >= 2 required");
    if (!in_low_range(alpha)) throw domain_error("e: alpha in [0,1/2) required");
    double e;
    if (k == 2) {
        e = 2.0 * (3.0 + 8.0 * alpha) / (11.0 * (1.0 + 2.0 * alpha));
    } else {
        double nu = nu_exponent(k, alpha);
        e = 2.0 * (k - nu) * (k + 2.0 * alpha - 1.25) /
            (((4.0 - nu) * k - 2.0 * nu) * (k + 2.0 * alpha - 1.0));
    }
    check01(e, "e(k,alpha)");
    return e;
}

double g_exponent(int k) {
    if (k < 2) throw domain_error("g: k >= 2 required");
    double g;
    if (k == 2) {
        g = 2.0 / 3.0;
    } else {
        double r = std::sqrt(2.0 * k * k - 4.0 * k + 1.0);
        g = (r - 1.0) / (2.0 * r - k);
    }
    check01(g, "g(k)");
    return g;
}

double e_hat_exponent(int k, double alpha) {
    if (k < 1) throw domain_error("e_hat: k >= 1 required");
    if (!in_high_range(alpha)) throw domain_error("e_hat: alpha in (1/2,2) required");
    double e;
    if (alpha >= 1.0) {
        e = (k == 2) ? (2.0 + alpha) / 4.0 : 1.0;
    } else if (k == 1) {
        e = 29.0 / (113.0 - 84.0 * alpha);
    } else if (k == 2) {
        e = std::min((2.0 + alpha) / 4.0, 29.0 / (71.0 - 42.0 * alpha));
    } else {
        double nu = nu_exponent(k, alpha);
        e = nu * (k + alpha - 1.25) / (2.0 * k * (nu - alpha));
    }
    check01(e, "e_hat(k,alpha)");
    return e;
}

double g_hat_exponent(int k, double alpha) {
    if (k < 1) throw domain_error("g_hat: k >= 1 required");
    if (!in_high_range(alpha)) throw domain_error("g_hat: alpha in (1/2,2) required");
    double g;
    if (alpha >= 1.0) {
        g = (k == 2) ? (2.0 + alpha) / 4.0 : 1.0;
    } else if (k == 1) {
        g = 1.0 / (3.0 - 2.0 * alpha);
    } else if (k == 2) {
        g = (2.0 + alpha) / 4.0;
    } else {
        double nu = nu_exponent(k, alpha);
        g = nu / (2.0 * (nu - alpha));
    }
    check01(g, "g_hat(k,alpha)");
    return g;
}

double theta_exponent(int k, double alpha) {
    double th;
    if (in_low_range(alpha)) {
        if (k < 2) throw domain_error("theta: k >= 2 required for alpha < 1/2");
        th = k * (k + alpha - 1.0) / ((k - alpha + 1.0) * (2.0 * k + 2.0 * alpha - 1.0));
    } else if (in_high_range(alpha)) {
        if (k < 1) throw domain_error("theta: k >= 1 required");
        th = (k + alpha - 1.0) / (2.0 * (k - alpha + 1.0));
    } else {
        throw domain_error("theta: alpha must lie in [0,1/2) or (1/2,2)");
    }
    if (!(th <= 0.5))
        throw convergence_error("theta exceeded 1/2");
    return th;
}

ExponentProfile exponent_profile(int k, double alpha) {
    ExponentProfile p;
    p.k = k;
    p.alpha = alpha;
    if (k >= 3 && (in_low_range(alpha) || (alpha > 0.5 && alpha < 1.0)))
        p.nu = nu_exponent(k, alpha);
    if (in_low_range(alpha) && k >= 2) {
        p.e = e_exponent(k, alpha);
        p.g = g_exponent(k);
    }
    if (in_high_range(alpha)) {
        p.e_hat = e_hat_exponent(k, alpha);
        p.g_hat = g_hat_exponent(k, alpha);
    }
    p.theta = theta_exponent(k, alpha);
    return p;
}

std::pair<double, double> admissible_range(const FunctionSpec& spec, double X,
                                           RangeMode mode, double eps0) {
    if (!(X >= 4.0)) throw domain_error("admissible_range: X >= 4 required");
    double E;
    switch (mode) {
        case RangeMode::unconditional:
            E = in_low_range(spec.alpha) ? e_exponent(spec.k, spec.alpha)
                                         : e_hat_exponent(spec.k, spec.alpha);
            break;
        case RangeMode::lindelof:
            E = in_low_range(spec.alpha) ? g_exponent(spec.k)
                                         : g_hat_exponent(spec.k, spec.alpha);
            break;
        case RangeMode::discrete:
            E = theta_exponent(spec.k, spec.alpha);
            break;
        default:
            throw domain_error("admissible_range: unknown mode");
    }
    return {2.0, std::pow(X, E - eps0)};
}

double nu_balance_residual(int k, double alpha) {
    if (k < 3 || !in_low_range(alpha))
        throw domain_error("nu_balance_residual: k >= 3 and alpha in [0,1/2) required");
    double nu = nu_exponent(k, alpha);
    double c = k + 2.0 * alpha - 1.25;
    double d = k + 2.0 * alpha - 1.0;
    double f2 = nu * c / (2.0 * (nu - alpha) * d - (1.0 - 2.0 * alpha) * c);
    double f3 = 2.0 * (k - nu) * c / ((4.0 * k - (k + 2.0) * nu) * d);
    return std::abs(f2 - f3);
}

}  // namespace shortvar
