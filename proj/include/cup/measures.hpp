#pragma once

// Densities, normalizing constants, samplers and moments for the measure
// families of the suite: standard Gaussian, chi, heavy-tailed Cauchy (Student)
// of arbitrary real order, uniform sphere, and the ball marginal of the
// uniform sphere measure.
//
// Sampling identity used throughout: if Z ~ gaussian on R^n and eta ~ chi_d
// independent with d = 2 alpha - n, then Z / eta has the Cauchy law of order
// alpha on R^n.  Projections of Cauchy laws stay Cauchy with a shifted order.

#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "cup/batch.hpp"
#include "cup/errors.hpp"
#include "cup/rng.hpp"
#include "cup/special.hpp"

namespace cup::measures {

struct CauchyParams {
    int n;
    double alpha;

    CauchyParams(int n_, double alpha_) : n(n_), alpha(alpha_) {
        require_domain(n >= 1, "CauchyParams requires n >= 1");
        require_domain(alpha > n / 2.0,
                       "CauchyParams: integrability requires alpha > n/2 (n=" +
                           std::to_string(n) + ", alpha=" + std::to_string(alpha) + ")");
    }

    /// Degrees of freedom of the chi mixing variable, d = 2 alpha - n > 0.
    double dof() const { return 2 * alpha - n; }
};

inline PointBatch sample_std_gaussian(int n, std::size_t count, RngStream stream) {
    require_domain(n >= 1, "sample_std_gaussian requires n >= 1");
    PointBatch batch(n, count);
    rng::Generator gen(stream);
    for (double& v : batch.data) v = gen.normal();
    return batch;
}

/// chi_d draws (dim-1 batch, strictly positive), any real d > 0:
/// eta = sqrt(2 Gamma(d/2, scale 1)).
inline PointBatch sample_chi(double d, std::size_t count, RngStream stream) {
    require_domain(d > 0, "sample_chi requires d > 0");
    PointBatch batch(1, count);
    rng::Generator gen(stream);
    for (double& v : batch.data) v = std::sqrt(2.0 * gen.gamma(d / 2.0));
    return batch;
}

inline PointBatch sample_cauchy(CauchyParams params, std::size_t count, RngStream stream) {
    PointBatch batch(params.n, count);
    rng::Generator gen(stream);
    const double half_d = params.dof() / 2.0;
    for (std::size_t i = 0; i < count; ++i) {
        auto p = batch.point(i);
        for (double& v : p) v = gen.normal();
        const double eta = std::sqrt(2.0 * gen.gamma(half_d));
        for (double& v : p) v /= eta;
    }
    return batch;
}

inline double cauchy_log_density(CauchyParams params, std::span<const double> x) {
    require_domain(static_cast<int>(x.size()) == params.n,
                   "cauchy_log_density: point dimension does not match params.n");
    return -special::log_cauchy_norm_const(params.n, params.alpha) -
           params.alpha * std::log1p(squared_norm(x));
}

/// E|X|^p over the Cauchy law of order alpha on R^n; finite iff p < 2 alpha - n.
inline double cauchy_radial_moment(CauchyParams params, double p) {
    require_domain(p >= 0, "cauchy_radial_moment requires p >= 0");
    require_domain(p < 2 * params.alpha - params.n,
                   "cauchy_radial_moment: moment is infinite, requires p < 2 alpha - n");
    const int n = params.n;
    const double a = params.alpha;
    return std::exp(special::log_gamma(a - (n + p) / 2) + special::log_gamma((n + p) / 2) -
                    special::log_gamma(a - n / 2.0) - special::log_gamma(n / 2.0));
}

/// Order of the k-dimensional coordinate projection of the Cauchy law of
/// order alpha on R^N: beta = alpha - (N-k)/2, always > k/2.
inline double marginal_order(int N, int k, double alpha) {
    require_domain(N >= 1 && k >= 1, "marginal_order requires N, k >= 1");
    require_domain(k <= N, "marginal_order requires k <= N");
    require_domain(alpha > N / 2.0, "marginal_order requires alpha > N/2");
    return alpha - (N - k) / 2.0;
}

inline PointBatch sample_sphere_uniform(int m, std::size_t count, RngStream stream) {
    require_domain(m >= 2, "sample_sphere_uniform requires ambient dimension m >= 2");
    PointBatch batch(m, count);
    rng::Generator gen(stream);
    for (std::size_t i = 0; i < count; ++i) {
        auto p = batch.point(i);
        double s2 = 0;
        do {
            s2 = 0;
            for (double& v : p) {
                v = gen.normal();
                s2 += v * v;
            }
        } while (s2 == 0.0);
        const double inv = 1.0 / std::sqrt(s2);
        for (double& v : p) v *= inv;
    }
    return batch;
}

/// The first-half marginal of the uniform measure on S^{2n-1}: supported on
/// the unit ball of R^n with density Gamma(n)/(pi^{n/2} Gamma(n/2))
/// (1-|u|^2)^{n/2-1}, and per-slice isotropic constant (1-|x|^2)/n.
struct BallMarginal {
    int n;

    double density(std::span<const double> u) const {
        require_domain(static_cast<int>(u.size()) == n,
                       "BallMarginal::density: dimension mismatch");
        const double s2 = squared_norm(u);
        if (s2 >= 1.0) return 0.0;
        const double log_c = special::log_gamma(n) - 0.5 * n * std::log(special::pi) -
                             special::log_gamma(n / 2.0);
        return std::exp(log_c + (n / 2.0 - 1.0) * std::log1p(-s2));
    }

    double sigma2(std::span<const double> x) const {
        require_domain(static_cast<int>(x.size()) == n,
                       "BallMarginal::sigma2: dimension mismatch");
        const double s2 = squared_norm(x);
        return (1.0 - s2) / n;
    }

    PointBatch sample(std::size_t count, RngStream stream) const {
        PointBatch sphere = sample_sphere_uniform(2 * n, count, stream);
        PointBatch batch(n, count);
        for (std::size_t i = 0; i < count; ++i) {
            auto src = sphere.point(i);
            auto dst = batch.point(i);
            for (int j = 0; j < n; ++j) dst[j] = src[j];
        }
        return batch;
    }
};

inline BallMarginal ball_marginal(int n) {
    require_domain(n >= 1, "ball_marginal requires n >= 1");
    return BallMarginal{n};
}

// ---------------------------------------------------------------------------
// Exact CDFs (via regularized incomplete beta/gamma), used by the sampler
// consistency tests and by the analytic sides of the verification reports.
// ---------------------------------------------------------------------------

/// P(|X| <= r) for X Cauchy of order alpha on R^n:  R^2/(1+R^2) ~ Beta(n/2, alpha-n/2).
inline double cauchy_radial_cdf(CauchyParams params, double r) {
    if (r <= 0) return 0.0;
    const double x = r * r / (1.0 + r * r);
    return special::reg_inc_beta(params.n / 2.0, params.alpha - params.n / 2.0, x);
}

/// Coordinate CDF of the 1-D Cauchy law of order alpha1 (> 1/2).
inline double cauchy1_cdf(double alpha1, double c) {
    require_domain(alpha1 > 0.5, "cauchy1_cdf requires alpha > 1/2");
    const double half_tail =
        0.5 * special::reg_inc_beta(0.5, alpha1 - 0.5, c * c / (1.0 + c * c));
    return c >= 0 ? 0.5 + half_tail : 0.5 - half_tail;
}

/// Density of the 1-D Cauchy law of order alpha1 at c.
inline double cauchy1_density(double alpha1, double c) {
    return std::exp(-special::log_cauchy_norm_const(1, alpha1) - alpha1 * std::log1p(c * c));
}

/// CDF of the chi law with d > 0 degrees of freedom.
inline double chi_cdf(double d, double r) {
    require_domain(d > 0, "chi_cdf requires d > 0");
    if (r <= 0) return 0.0;
    return special::reg_lower_gamma(d / 2.0, r * r / 2.0);
}

/// P(|Z| <= r) for a standard Gaussian vector in R^n.
inline double gaussian_radial_cdf(int n, double r) {
    return chi_cdf(static_cast<double>(n), r);
}

inline double std_normal_cdf(double c) { return 0.5 * std::erfc(-c / std::numbers::sqrt2); }

inline double std_normal_density(double c) {
    return std::exp(-0.5 * c * c) / std::sqrt(2 * special::pi);
}

}  // namespace cup::measures
