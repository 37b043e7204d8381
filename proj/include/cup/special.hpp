#pragma once

// Gamma-function constants and two-sided bounds used throughout the suite.
// Everything is evaluated in log space and exponentiated at the boundary, so
// that orders up to ~1e6 (used by the Gaussian-limit sweeps) stay finite.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cup/errors.hpp"

namespace cup::special {

inline constexpr double pi = std::numbers::pi;

inline double log_gamma(double x) {
    require_domain(x > 0, "log_gamma requires x > 0 (got " + std::to_string(x) + ")");
    return std::lgamma(x);
}

inline double log_beta(double x, double y) {
    require_domain(x > 0 && y > 0, "log_beta requires x > 0 and y > 0");
    return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

/// c_p = (pi/2)^p E|xi|^p = (pi/2)^p 2^{p/2} Gamma((p+1)/2) / sqrt(pi),
/// the L^p constant of the Gaussian double-integral Poincare inequality.
inline double pisier_cp(double p) {
    require_domain(p >= 1, "pisier_cp requires p >= 1");
    return std::exp(p * std::log(pi / 2) + 0.5 * p * std::numbers::ln2 +
                    log_gamma((p + 1) / 2) - 0.5 * std::log(pi));
}

/// E|Z|^p for a standard Gaussian vector Z in R^n: 2^{p/2} Gamma((n+p)/2)/Gamma(n/2).
inline double gaussian_abs_moment(int n, double p) {
    require_domain(n >= 1, "gaussian_abs_moment requires n >= 1");
    require_domain(p >= 0, "gaussian_abs_moment requires p >= 0");
    return std::exp(0.5 * p * std::numbers::ln2 + log_gamma((n + p) / 2.0) - log_gamma(n / 2.0));
}

/// G(n,p) = E|xi|^p / E|Z|^p = Gamma(n/2) Gamma((p+1)/2) / (sqrt(pi) Gamma((n+p)/2)).
/// Equals the p-th absolute moment of one coordinate of a uniform point on S^{n-1}.
inline double spherical_mean_ratio(int n, double p) {
    require_domain(n >= 1, "spherical_mean_ratio requires n >= 1");
    require_domain(p >= 0, "spherical_mean_ratio requires p >= 0");
    return std::exp(log_gamma(n / 2.0) + log_gamma((p + 1) / 2) - 0.5 * std::log(pi) -
                    log_gamma((n + p) / 2.0));
}

/// Normalizing constant of the density (1+|x|^2)^{-alpha} on R^n:
/// pi^{n/2} Gamma(alpha - n/2) / Gamma(alpha).  Finite iff alpha > n/2.
inline double cauchy_norm_const(int n, double alpha) {
    require_domain(n >= 1, "cauchy_norm_const requires n >= 1");
    require_domain(alpha > n / 2.0,
                   "cauchy_norm_const: measure diverges, requires alpha > n/2 (n=" +
                       std::to_string(n) + ", alpha=" + std::to_string(alpha) + ")");
    return std::exp(0.5 * n * std::log(pi) + log_gamma(alpha - n / 2.0) - log_gamma(alpha));
}

inline double log_cauchy_norm_const(int n, double alpha) {
    require_domain(alpha > n / 2.0, "log_cauchy_norm_const requires alpha > n/2");
    return 0.5 * n * std::log(pi) + log_gamma(alpha - n / 2.0) - log_gamma(alpha);
}

/// The constant of the L^p Poincare inequality for pair Cauchy measures,
/// together with the two factors it is assembled from.
///
/// C       = Gamma((p+1)/2) Gamma(alpha-n-p/2) / (sqrt(pi) Gamma(alpha-n))
/// A       = pi^{(n-1)/2} Gamma(alpha-(n+p)/2) Gamma((p+1)/2) / Gamma(alpha)
/// c_ratio = normalizing-constant ratio of the orders (n,beta) and (2n,alpha)
/// beta    = alpha - (n+p)/2
///
/// C == A * c_ratio holds to 1e-12 relative for all admissible parameters.
struct PoincareConstants {
    double C;
    double A;
    double c_ratio;
    double beta;
};

inline PoincareConstants poincare_constants(int n, double p, double alpha) {
    require_domain(n >= 1, "poincare_constants requires n >= 1");
    require_domain(alpha > n + 0.5, "poincare_constants requires alpha > n + 1/2");
    require_domain(p >= 1, "poincare_constants requires p >= 1");
    require_domain(p < 2 * (alpha - n), "poincare_constants requires p < 2(alpha - n)");
    PoincareConstants r{};
    r.beta = alpha - (n + p) / 2;
    // The five log-gamma values are computed once, and large nearby terms are
    // differenced before anything else is added: the subtractions are exact
    // for nearby arguments, so the C = A * c_ratio identity telescopes to ulp
    // level even for alpha ~ 1e6.
    const double lg_half_p = log_gamma((p + 1) / 2);
    const double lg_small = log_gamma(alpha - n - p / 2);  // = Gamma(beta - n/2)
    const double lg_mid = log_gamma(r.beta);               // = Gamma(alpha - (n+p)/2)
    const double lg_diff = log_gamma(alpha - n);
    const double lg_full = log_gamma(alpha);
    const double half_log_pi = 0.5 * std::log(pi);
    r.C = std::exp((lg_small - lg_diff) + (lg_half_p - half_log_pi));
    r.A = std::exp((lg_mid - lg_full) + (lg_half_p + (n - 1) * half_log_pi));
    r.c_ratio = std::exp((lg_small - lg_mid) + (lg_full - lg_diff) - n * half_log_pi);
    return r;
}

/// d = Gamma(alpha - n/2)^2 / (Gamma(alpha - n) Gamma(alpha)) in (0,1):
/// the pointwise domination constant of the pair measure over the product measure.
inline double product_bound_d(int n, double alpha) {
    require_domain(n >= 1, "product_bound_d requires n >= 1");
    require_domain(alpha > n, "product_bound_d requires alpha > n");
    return std::exp(2 * log_gamma(alpha - n / 2.0) - log_gamma(alpha - n) - log_gamma(alpha));
}

/// Batir's two-sided bound sqrt(2e)(x/e)^x <= Gamma(x+1/2) <= sqrt(2pi)(x/e)^x
/// for x >= 1/2, plus companion flags for the Wendel and Gautschi inequalities.
/// The lower bound is attained at x = 1/2, so containment is checked with a
/// 1e-12 relative slack.
struct GammaBoundPair {
    double lower;
    double upper;
    bool batir_contains;   // Gamma(x+1/2) in [lower, upper]
    bool wendel_holds;     // Gamma(x+1/2) <= Gamma(x) sqrt(x)
    bool gautschi_holds;   // Gamma(x+1)/Gamma(x+1/2) < sqrt(x+1)
};

inline GammaBoundPair gamma_inequality_bounds(double x) {
    require_domain(x >= 0.5, "gamma_inequality_bounds requires x >= 1/2");
    const double log_core = x * (std::log(x) - 1.0);
    const double log_lower = 0.5 * (std::numbers::ln2 + 1.0) + log_core;
    const double log_upper = 0.5 * std::log(2 * pi) + log_core;
    const double lg = log_gamma(x + 0.5);
    GammaBoundPair r{};
    r.lower = std::exp(log_lower);
    r.upper = std::exp(log_upper);
    const double slack = 1e-12 * std::max({1.0, std::fabs(log_lower), std::fabs(log_upper)});
    r.batir_contains = (lg >= log_lower - slack) && (lg <= log_upper + slack);
    r.wendel_holds = lg <= log_gamma(x) + 0.5 * std::log(x) + slack;
    r.gautschi_holds = log_gamma(x + 1) - lg < 0.5 * std::log(x + 1) + slack;
    return r;
}

/// Closed upper bound 2 (2p/(alpha-n))^{p/2} for the p-th moment of |f(x)-f(y)|
/// over the pair Cauchy measure when f is 1-Lipschitz.  Dominates the exact
/// (pi/2)^p C(n,p,alpha) bound on its admissible window.
inline double lipschitz_moment_bound(int n, double alpha, double p) {
    require_domain(n >= 1, "lipschitz_moment_bound requires n >= 1");
    require_domain(alpha >= n + 1.5, "lipschitz_moment_bound requires alpha >= n + 3/2");
    require_domain(p >= 1 && p <= 2 * (alpha - n - 1),
                   "lipschitz_moment_bound requires 1 <= p <= 2(alpha - n - 1)");
    return 2.0 * std::pow(2 * p / (alpha - n), p / 2);
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma/beta.  Classic series + Lentz continued
// fractions; used for the exact radial CDFs of the Gaussian, chi and Cauchy
// families.  Relative accuracy ~1e-14 away from the extreme tails.
// ---------------------------------------------------------------------------

namespace detail {

inline double lower_gamma_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double upper_gamma_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -i * (i - a);
        b += 2;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1, d = 1 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m < 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1) < 1e-16) break;
    }
    return h;
}

}  // namespace detail

/// P(a,x): regularized lower incomplete gamma.
inline double reg_lower_gamma(double a, double x) {
    require_domain(a > 0, "reg_lower_gamma requires a > 0");
    require_domain(x >= 0, "reg_lower_gamma requires x >= 0");
    if (x == 0) return 0.0;
    if (x < a + 1) return detail::lower_gamma_series(a, x);
    return 1.0 - detail::upper_gamma_cf(a, x);
}

/// I_x(a,b): regularized incomplete beta.
inline double reg_inc_beta(double a, double b, double x) {
    require_domain(a > 0 && b > 0, "reg_inc_beta requires a > 0 and b > 0");
    require_domain(x >= 0 && x <= 1, "reg_inc_beta requires x in [0,1]");
    if (x == 0 || x == 1) return x;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1) / (a + b + 2)) return front * detail::beta_cf(a, b, x) / a;
    return 1.0 - front * detail::beta_cf(b, a, 1 - x) / b;
}

}  // namespace cup::special
