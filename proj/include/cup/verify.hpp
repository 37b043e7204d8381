#pragma once

// Monte Carlo and exact estimators for both sides of every inequality of the
// suite, packaged as reproducible reports.  Left and right sides of a report
// derive from the same stream (common random numbers where the measures
// coincide), so re-running with one seed reproduces every number bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "cup/errors.hpp"
#include "cup/funcs.hpp"
#include "cup/measures.hpp"
#include "cup/mc.hpp"
#include "cup/quadrature.hpp"
#include "cup/report.hpp"
#include "cup/sets.hpp"
#include "cup/special.hpp"

namespace cup::verify {

using funcs::TestFunction;
using measures::CauchyParams;

// ---------------------------------------------------------------------------
// Measures under test (for perimeter / isoperimetry work).
// ---------------------------------------------------------------------------

struct GaussianMeasure {
    int n;
};

using MeasureSpec = std::variant<GaussianMeasure, CauchyParams>;

inline int measure_dim(const MeasureSpec& m) {
    if (const auto* g = std::get_if<GaussianMeasure>(&m)) return g->n;
    return std::get<CauchyParams>(m).n;
}

inline PointBatch sample_measure(const MeasureSpec& m, std::size_t count, RngStream stream) {
    if (const auto* g = std::get_if<GaussianMeasure>(&m))
        return measures::sample_std_gaussian(g->n, count, stream);
    return measures::sample_cauchy(std::get<CauchyParams>(m), count, stream);
}

inline double unit_ball_volume(int n) {
    return std::exp(0.5 * n * std::log(special::pi) - special::log_gamma(n / 2.0 + 1));
}

/// Exact measure of a test set.
inline double measure_of(const MeasureSpec& m, const SetSpec& set) {
    if (const auto* g = std::get_if<GaussianMeasure>(&m)) {
        if (set.is_halfspace()) return measures::std_normal_cdf(set.as_halfspace().offset);
        const double r = set.as_ball().radius;
        return special::reg_lower_gamma(g->n / 2.0, r * r / 2.0);
    }
    const auto& c = std::get<CauchyParams>(m);
    if (set.is_halfspace()) {
        const double a1 = measures::marginal_order(c.n, 1, c.alpha);
        return measures::cauchy1_cdf(a1, set.as_halfspace().offset);
    }
    return measures::cauchy_radial_cdf(c, set.as_ball().radius);
}

/// Exact Minkowski-content perimeter of a test set: a half-space boundary sees
/// the 1-D marginal density at the offset, a centered sphere sees
/// surface area x radial density.
inline double perimeter_of(const MeasureSpec& m, const SetSpec& set) {
    if (const auto* g = std::get_if<GaussianMeasure>(&m)) {
        if (set.is_halfspace())
            return measures::std_normal_density(set.as_halfspace().offset);
        const double r = set.as_ball().radius;
        const double log_dens = -0.5 * g->n * std::log(2 * special::pi) - 0.5 * r * r;
        return g->n * unit_ball_volume(g->n) * std::pow(r, g->n - 1) * std::exp(log_dens);
    }
    const auto& c = std::get<CauchyParams>(m);
    if (set.is_halfspace()) {
        const double a1 = measures::marginal_order(c.n, 1, c.alpha);
        return measures::cauchy1_density(a1, set.as_halfspace().offset);
    }
    const double r = set.as_ball().radius;
    const double log_dens =
        -special::log_cauchy_norm_const(c.n, c.alpha) - c.alpha * std::log1p(r * r);
    return c.n * unit_ball_volume(c.n) * std::pow(r, c.n - 1) * std::exp(log_dens);
}

// ---------------------------------------------------------------------------
// Convex comparison functions for the Gaussian double-integral inequality.
// ---------------------------------------------------------------------------

struct Power {
    double p;
};
struct Exp {};
using Convexity = std::variant<Power, Exp>;

namespace detail {

inline void validate_exp_admissible(const TestFunction& f) {
    require_domain(!std::holds_alternative<funcs::SmoothNorm>(f.spec()),
                   "Exp comparison requires sub-quadratic growth; admitted variants are "
                   "Linear, RbfMixture, SmoothedHalfspace");
    if (const auto* lin = std::get_if<funcs::Linear>(&f.spec())) {
        const double t = norm(std::span<const double>(lin->direction));
        require_domain(t < 2 / special::pi,
                       "Exp with Linear f requires |theta| < 2/pi "
                       "(E e^{a xi^2} needs a < 1/2, i.e. (pi^2/8)|theta|^2 < 1/2)");
    }
}

inline std::string fmt_num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline const funcs::Linear* as_linear(const TestFunction& f) {
    return std::get_if<funcs::Linear>(&f.spec());
}

inline double linear_norm(const funcs::Linear& lin) {
    return norm(std::span<const double>(lin.direction));
}

/// Thread-local gradient scratch sized for dim.
struct GradScratch {
    std::span<double> get(std::size_t dim) const {
        thread_local std::vector<double> buf;
        if (buf.size() < dim) buf.resize(dim);
        return std::span<double>(buf.data(), dim);
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Gaussian double-integral inequality:
//   E Psi(f(Y) - f(X)) <= E Psi((pi/2) <grad f(X), Y>)   over gamma_n x gamma_n.
// Both sides share the (X, Y) batch.  For Linear f with Power(p) the closed
// forms |theta|^p 2^{p/2} E|xi|^p and c_p |theta|^p are attached; for Exp they
// are e^{|theta|^2} and e^{(pi^2/8)|theta|^2}.
// ---------------------------------------------------------------------------

inline InequalityReport pisier_gaussian_report(const TestFunction& f, Convexity psi, int n,
                                               std::size_t count, RngStream stream) {
    require_domain(f.dim() == n, "pisier_gaussian_report: f.dim must equal n");
    std::string label = "pisier/" + f.describe();
    double power = 0;
    const bool is_exp = std::holds_alternative<Exp>(psi);
    if (is_exp) {
        detail::validate_exp_admissible(f);
        label += "/exp";
    } else {
        power = std::get<Power>(psi).p;
        require_domain(power >= 1, "Power comparison requires p >= 1");
        label += "/power(" + detail::fmt_num(power) + ")";
    }
    auto psi_of = [is_exp, power](double r) {
        return is_exp ? std::exp(r) : std::pow(std::fabs(r), power);
    };
    auto sampler = [n](std::size_t c, RngStream s) {
        return measures::sample_std_gaussian(2 * n, c, s);
    };
    detail::GradScratch scratch;
    auto lhs_fn = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        return psi_of(f(y) - f(x));
    };
    auto rhs_fn = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        auto grad = scratch.get(x.size());
        f.eval_with_grad(x, grad);
        return psi_of(special::pi / 2 * dot(std::span<const double>(grad.data(), x.size()), y));
    };
    const RngStream shared = substream(stream, 0x70697369u);
    InequalityReport r = make_report(label, mc_estimate(lhs_fn, sampler, count, shared),
                                     mc_estimate(rhs_fn, sampler, count, shared));
    if (const auto* lin = detail::as_linear(f)) {
        const double t = detail::linear_norm(*lin);
        if (is_exp) {
            r.lhs_closed_form = std::exp(t * t);
            r.rhs_closed_form = std::exp(special::pi * special::pi / 8 * t * t);
        } else {
            r.lhs_closed_form = std::pow(t, power) * std::pow(2.0, power / 2) *
                                special::gaussian_abs_moment(1, power);
            r.rhs_closed_form = special::pisier_cp(power) * std::pow(t, power);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Exponential moment bound: E e^{f - Ef} <= E e^{(pi^2/8) |grad f|^2} over
// gamma_n.  f is centered by its own Monte Carlo mean, which is reported.
// ---------------------------------------------------------------------------

struct ExpMomentReport {
    InequalityReport report;
    double centered_mean = 0;  // the subtracted MC mean of f
};

inline ExpMomentReport exp_moment_report(const TestFunction& f, int n, std::size_t count,
                                         RngStream stream) {
    require_domain(f.dim() == n, "exp_moment_report: f.dim must equal n");
    detail::validate_exp_admissible(f);
    auto sampler = [n](std::size_t c, RngStream s) {
        return measures::sample_std_gaussian(n, c, s);
    };
    const RngStream mean_stream = substream(stream, 0x6d65616eu);
    const RngStream shared = substream(stream, 0x65786d6fu);
    const double mean =
        mc_estimate([&f](std::span<const double> x) { return f(x); }, sampler, count,
                    mean_stream)
            .mean;
    detail::GradScratch scratch;
    auto lhs_fn = [&](std::span<const double> x) { return std::exp(f(x) - mean); };
    auto rhs_fn = [&](std::span<const double> x) {
        auto grad = scratch.get(x.size());
        f.eval_with_grad(x, grad);
        const double g2 = squared_norm(std::span<const double>(grad.data(), x.size()));
        return std::exp(special::pi * special::pi / 8 * g2);
    };
    ExpMomentReport out;
    out.centered_mean = mean;
    out.report = make_report("exp-moment/" + f.describe(),
                             mc_estimate(lhs_fn, sampler, count, shared),
                             mc_estimate(rhs_fn, sampler, count, shared));
    if (const auto* lin = detail::as_linear(f)) {
        const double t = detail::linear_norm(*lin);
        out.report.lhs_closed_form = std::exp(t * t / 2);
        out.report.rhs_closed_form = std::exp(special::pi * special::pi / 8 * t * t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// L^p Poincare inequality for pair Cauchy measures:
//   E_{(x,y) ~ pair law, order alpha} |f(x)-f(y)|^p
//       <= C (pi/2)^p E_{x ~ order beta} |grad f(x)|^p,   beta = alpha-(n+p)/2.
// The Monte Carlo path needs p < alpha - n (finite variance); outside that
// window only the Linear closed forms are served.
// ---------------------------------------------------------------------------

inline InequalityReport cauchy_poincare_report(const TestFunction& f, CauchyParams params,
                                               double p, std::size_t count, RngStream stream) {
    const int n = params.n;
    const double alpha = params.alpha;
    require_domain(f.dim() == n, "cauchy_poincare_report: f.dim must equal params.n");
    const special::PoincareConstants k = special::poincare_constants(n, p, alpha);
    const double rhs_scale = k.C * std::pow(special::pi / 2, p);
    const std::string label =
        "cauchy-poincare/" + f.describe() + "/p=" + detail::fmt_num(p);

    std::optional<double> lhs_exact, rhs_exact;
    if (const auto* lin = detail::as_linear(f)) {
        const double t = detail::linear_norm(*lin);
        // <theta, x - y> is sqrt(2)|theta| times a coordinate of the projected
        // pair law, whose order is alpha - n + 1/2.
        const double diff_order = alpha - n + 0.5;
        lhs_exact = std::pow(t, p) * std::pow(2.0, p / 2) *
                    measures::cauchy_radial_moment(CauchyParams(1, diff_order), p);
        rhs_exact = rhs_scale * std::pow(t, p);
    }

    const bool mc_admissible = p < alpha - n;
    if (!mc_admissible) {
        require_domain(lhs_exact.has_value(),
                       "cauchy_poincare_report: Monte Carlo variance guard requires "
                       "p < alpha - n; for larger p use the exact path (Linear f)");
        InequalityReport r = make_report(label + "/exact", MCEstimate::exact_value(*lhs_exact),
                                         MCEstimate::exact_value(*rhs_exact));
        r.lhs_closed_form = lhs_exact;
        r.rhs_closed_form = rhs_exact;
        return r;
    }

    auto pair_sampler = [n, alpha](std::size_t c, RngStream s) {
        return measures::sample_cauchy(CauchyParams(2 * n, alpha), c, s);
    };
    auto grad_sampler = [n, beta = k.beta](std::size_t c, RngStream s) {
        return measures::sample_cauchy(CauchyParams(n, beta), c, s);
    };
    detail::GradScratch scratch;
    auto lhs_fn = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        return std::pow(std::fabs(f(x) - f(y)), p);
    };
    auto rhs_fn = [&](std::span<const double> x) {
        auto grad = scratch.get(x.size());
        f.eval_with_grad(x, grad);
        return std::pow(norm(std::span<const double>(grad.data(), x.size())), p);
    };
    const MCEstimate lhs =
        mc_estimate(lhs_fn, pair_sampler, count, substream(stream, 0x6c687370u));
    const MCEstimate rhs =
        mc_estimate(rhs_fn, grad_sampler, count, substream(stream, 0x72687370u))
            .affine(rhs_scale);
    InequalityReport r = make_report(label, lhs, rhs);
    r.lhs_closed_form = lhs_exact;
    r.rhs_closed_form = rhs_exact;
    return r;
}

// ---------------------------------------------------------------------------
// Gaussian limit of the rescaled Poincare constant:
//   C(n,p,alpha) (2 alpha)^{p/2} (pi/2)^p  ->  c_p   as alpha -> infinity,
// with a strictly decreasing relative gap.
// ---------------------------------------------------------------------------

struct SweepRow {
    double alpha;
    double rescaled;
    double limit;
    double relative_gap;
};

inline std::vector<SweepRow> gaussian_limit_sweep(int n, double p,
                                                  const std::vector<double>& alphas) {
    std::vector<SweepRow> rows;
    rows.reserve(alphas.size());
    const double limit = special::pisier_cp(p);
    for (double alpha : alphas) {
        const auto k = special::poincare_constants(n, p, alpha);
        SweepRow row{};
        row.alpha = alpha;
        row.rescaled =
            k.C * std::exp(0.5 * p * std::log(2 * alpha) + p * std::log(special::pi / 2));
        row.limit = limit;
        row.relative_gap = row.rescaled / limit - 1.0;
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Sphere splitting inequality: for (x, y) the two halves of a uniform point
// on S^{2n-1},
//   E |f(x)-f(y)|^2 <= (pi^2/(4n)) E_pi |grad f(u)|^2 (1-|u|^2),
// pi being the ball marginal; and for 1-Lipschitz f, E |f(x)-f(y)|^2 <= pi^2/(8n).
// ---------------------------------------------------------------------------

struct SphereReport {
    InequalityReport report;
    std::optional<InequalityReport> lipschitz_line;  // present when lip(f) <= 1
};

inline SphereReport sphere_poincare_report(const TestFunction& f, int n, std::size_t count,
                                           RngStream stream) {
    require_domain(n >= 2, "sphere_poincare_report requires n >= 2 for a nontrivial split");
    require_domain(f.dim() == n, "sphere_poincare_report: f.dim must equal n");
    auto sampler = [n](std::size_t c, RngStream s) {
        return measures::sample_sphere_uniform(2 * n, c, s);
    };
    detail::GradScratch scratch;
    auto lhs_fn = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        const double d = f(x) - f(y);
        return d * d;
    };
    // Weight (pi^2/4) sigma^2(x) |grad f(x)|^2 with sigma^2 the isotropic
    // function (1-|x|^2)/n of the ball marginal; x is the first half of the
    // sphere point, which has exactly that marginal law.
    const measures::BallMarginal marginal = measures::ball_marginal(n);
    const double rhs_scale = special::pi * special::pi / 4.0;
    auto rhs_fn = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        auto grad = scratch.get(x.size());
        f.eval_with_grad(x, grad);
        const double g2 = squared_norm(std::span<const double>(grad.data(), x.size()));
        return g2 * marginal.sigma2(x);
    };
    const RngStream shared = substream(stream, 0x73706872u);
    const MCEstimate lhs = mc_estimate(lhs_fn, sampler, count, shared);
    const MCEstimate rhs = mc_estimate(rhs_fn, sampler, count, shared).affine(rhs_scale);
    SphereReport out;
    out.report = make_report("sphere/" + f.describe() + "/n=" + std::to_string(n), lhs, rhs);
    if (const auto* lin = detail::as_linear(f)) {
        const double t = detail::linear_norm(*lin);
        out.report.lhs_closed_form = t * t / n;
        // E sigma^2 = E(1-|x|^2)/n = 1/(2n).
        out.report.rhs_closed_form = rhs_scale * t * t * 0.5 / n;
    }
    if (f.lipschitz_bound() <= 1 + 1e-12) {
        out.lipschitz_line =
            make_report("sphere-lipschitz/" + f.describe() + "/n=" + std::to_string(n), lhs,
                        MCEstimate::exact_value(special::pi * special::pi / (8.0 * n)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minkowski-content perimeter by Monte Carlo:
//   (nu(A_eps) - nu(A)) / eps, Richardson-extrapolated to eps -> 0 by an
// a + b*eps fit over the three smallest eps.  The one batch serves every eps.
// ---------------------------------------------------------------------------

struct PerimeterEstimate {
    std::vector<double> eps;
    std::vector<MCEstimate> finite_diff;  // one per eps
    double mc_extrapolated = 0;
    double analytic = 0;
};

inline PerimeterEstimate perimeter_estimate(const MeasureSpec& measure, const SetSpec& set,
                                            std::vector<double> eps_list, std::size_t count,
                                            RngStream stream) {
    require_domain(eps_list.size() >= 3, "perimeter_estimate requires at least 3 epsilons");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        require_domain(eps_list[i] > eps_list[i + 1] && eps_list[i + 1] > 0,
                       "perimeter_estimate: eps_list must be positive and decreasing");
    const RngStream draw = substream(stream, 0x70657269u);
    const PointBatch batch = sample_measure(measure, count, draw);
    PerimeterEstimate out;
    out.eps = std::move(eps_list);
    for (double eps : out.eps) {
        // The shell A_eps \ A has indicator 0 <= s < eps of the signed distance.
        std::uint64_t hits = 0;
        for (std::size_t i = 0; i < batch.count(); ++i) {
            const double s = set.signed_distance(batch.point(i));
            if (s > 0 && s < eps) ++hits;
        }
        const double q = static_cast<double>(hits) / count;
        MCEstimate e;
        e.count = count;
        e.mean = q / eps;
        e.std_error = std::sqrt(q * (1 - q) / count) / eps;
        e.stream = draw;
        out.finite_diff.push_back(e);
    }
    // Least-squares a + b*eps over the three smallest eps; report a.
    const std::size_t m = out.eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = m - 3; i < m; ++i) {
        const double x = out.eps[i], y = out.finite_diff[i].mean;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = 3 * sxx - sx * sx;
    out.mc_extrapolated = (sy * sxx - sx * sxy) / denom;
    out.analytic = perimeter_of(measure, set);
    return out;
}

// ---------------------------------------------------------------------------
// Isoperimetry bundle.
//  (i)  pair-measure bound:   nu_beta^+(A) >= (2 sqrt(alpha-n)/sqrt(pi)) mu_alpha(A x A^c)
//       with alpha = beta + (n+1)/2 and mu_alpha the pair Cauchy law;
//  (ii) product-form bound:   nu_beta^+(A) >= c nu_{beta*}(A)(1 - nu_{beta*}(A)),
//       beta* = alpha, c = (d/sqrt(pi)) sqrt(2 beta);
//  (iii) Gaussian Cheeger:    gamma_n^+(A) >= sqrt(2/pi) min(gamma_n(A), 1-gamma_n(A)),
//       an equality for half-spaces through the origin.
// Left sides are analytic; the A x A^c mass is quadrature for half-spaces and
// Monte Carlo for balls.
// ---------------------------------------------------------------------------

namespace detail {

/// m_{2,a2}{ s <= c < t } for the rotation-invariant 2-D law of order a2.
inline double cauchy2_corner_prob(double a2, double c) {
    const double log_c2 = special::log_cauchy_norm_const(2, a2);
    const double log_c1 = special::log_cauchy_norm_const(1, a2);
    auto integrand = [&](double r) {
        const double t = c + r;
        const double q2 = 1.0 + t * t;
        return std::exp((0.5 - a2) * std::log(q2) + log_c1 - log_c2) *
               measures::cauchy1_cdf(a2, c / std::sqrt(q2));
    };
    return quad::integrate_half_line(integrand, 1e-13);
}

}  // namespace detail

struct IsoperimetryBundle {
    InequalityReport pair_bound;
    InequalityReport product_bound;
    InequalityReport gaussian_cheeger;
    double alpha = 0;       // pair order = beta + (n+1)/2, also beta*
    double d = 0;           // product domination constant at (n, alpha)
    double cheeger_gap = 0; // |lhs - rhs| of (iii)
    bool gaussian_equality = false;
};

inline IsoperimetryBundle isoperimetry_report(int n, double beta, const SetSpec& set,
                                              std::size_t count, RngStream stream) {
    require_domain(n >= 1, "isoperimetry_report requires n >= 1");
    require_domain(beta >= (n + 1) / 2.0, "isoperimetry_report requires beta >= (n+1)/2");
    const double alpha = beta + (n + 1) / 2.0;
    IsoperimetryBundle out;
    out.alpha = alpha;

    const MeasureSpec nu = CauchyParams(n, beta);
    const double perim = perimeter_of(nu, set);

    // (i) pair-measure bound.
    const double scale_i = 2 * std::sqrt(alpha - n) / std::sqrt(special::pi);
    MCEstimate cross_mass;
    if (set.is_halfspace()) {
        const double a2 = alpha - n + 1;  // order of the projected 2-D pair law
        cross_mass =
            MCEstimate::exact_value(detail::cauchy2_corner_prob(a2, set.as_halfspace().offset));
    } else {
        auto pair_sampler = [n, alpha](std::size_t c, RngStream s) {
            return measures::sample_cauchy(CauchyParams(2 * n, alpha), c, s);
        };
        auto crossing = [&set, n](std::span<const double> xy) {
            const bool in_x = set.signed_distance(xy.subspan(0, static_cast<std::size_t>(n))) <= 0;
            const bool in_y = set.signed_distance(xy.subspan(static_cast<std::size_t>(n))) <= 0;
            return (in_x && !in_y) ? 1.0 : 0.0;
        };
        cross_mass =
            mc_estimate(crossing, pair_sampler, count, substream(stream, 0x69736f31u));
    }
    out.pair_bound = make_report("isoperimetry/pair-bound/" + set.describe(),
                                 cross_mass.affine(scale_i), MCEstimate::exact_value(perim));

    // (ii) product-form bound.
    out.d = special::product_bound_d(n, alpha);
    const double c_const = out.d / std::sqrt(special::pi) * std::sqrt(2 * beta);
    const double mass_star = measure_of(CauchyParams(n, alpha), set);
    out.product_bound = make_report(
        "isoperimetry/product-bound/" + set.describe(),
        MCEstimate::exact_value(c_const * mass_star * (1 - mass_star)),
        MCEstimate::exact_value(perim));

    // (iii) Gaussian Cheeger comparison on the same set.
    const MeasureSpec gauss = GaussianMeasure{n};
    const double gmass = measure_of(gauss, set);
    const double glhs = std::sqrt(2 / special::pi) * std::min(gmass, 1 - gmass);
    const double gper = perimeter_of(gauss, set);
    out.gaussian_cheeger = make_report("isoperimetry/gaussian-cheeger/" + set.describe(),
                                       MCEstimate::exact_value(glhs),
                                       MCEstimate::exact_value(gper));
    out.cheeger_gap = std::fabs(glhs - gper);
    out.gaussian_equality =
        set.is_halfspace() && set.as_halfspace().offset == 0 &&
        out.cheeger_gap <= 1e-12 * std::max(1.0, std::fabs(gper));
    return out;
}

// ---------------------------------------------------------------------------
// Subgaussian tails and moment bounds for 1-Lipschitz differences.
// f is rescaled by its certified Lipschitz bound, so the checked statements
// are exactly the Lip <= 1 ones:
//  (a) pair law:  P( sqrt(alpha-n) |f(x)-f(y)| >= t )  <=  2 e^{-t^2/12},
//      for t in [0, sqrt(alpha-n)];
//  (b) product law (alpha >= n^2): same event, bound 4 e^{-t^2/12};
//  (c) moments p in {1,2,4}: E (sqrt(alpha-n)|f(x)-f(y)|)^p <= 2 (2p)^{p/2}.
// ---------------------------------------------------------------------------

struct TailReport {
    double lipschitz_scale = 1;
    std::vector<InequalityReport> pair_tails;
    std::vector<InequalityReport> product_tails;  // empty unless alpha >= n^2
    std::vector<InequalityReport> moments;
    std::vector<double> dropped_t;  // outside [0, sqrt(alpha-n)]
    std::vector<double> dropped_p;  // outside the admissible moment window
};

inline TailReport tail_and_moment_report(const TestFunction& f, CauchyParams params,
                                         const std::vector<double>& t_grid, std::size_t count,
                                         RngStream stream) {
    const int n = params.n;
    const double alpha = params.alpha;
    require_domain(f.dim() == n, "tail_and_moment_report: f.dim must equal params.n");
    require_domain(alpha >= n + 1.5, "tail_and_moment_report requires alpha >= n + 3/2");
    TailReport out;
    out.lipschitz_scale = f.lipschitz_bound();
    require_domain(out.lipschitz_scale > 0, "tail_and_moment_report: zero Lipschitz bound");
    const double root = std::sqrt(alpha - n);
    const double scale = root / out.lipschitz_scale;

    auto scaled_dev = [&f, n, scale](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        return scale * std::fabs(f(x) - f(y));
    };

    std::vector<double> ts;
    for (double t : t_grid) {
        if (t >= 0 && t <= root)
            ts.push_back(t);
        else
            out.dropped_t.push_back(t);
    }

    auto tail_lines = [&](auto&& sampler, double bound_factor, std::uint64_t salt,
                          const std::string& tag) {
        std::vector<InequalityReport> lines;
        for (double t : ts) {
            auto indicator = [&scaled_dev, t](std::span<const double> xy) {
                return scaled_dev(xy) >= t ? 1.0 : 0.0;
            };
            MCEstimate tail = mc_estimate(indicator, sampler, count, substream(stream, salt));
            // Binomial standard error.
            tail.std_error = std::sqrt(tail.mean * (1 - tail.mean) / tail.count);
            const double bound = bound_factor * std::exp(-t * t / 12);
            lines.push_back(make_report(
                tag + "/" + f.describe() + "/t=" + detail::fmt_num(t), tail,
                MCEstimate::exact_value(bound)));
        }
        return lines;
    };

    auto pair_sampler = [n, alpha](std::size_t c, RngStream s) {
        return measures::sample_cauchy(CauchyParams(2 * n, alpha), c, s);
    };
    out.pair_tails = tail_lines(pair_sampler, 2.0, 0x7470u, "tail/pair");

    if (alpha >= static_cast<double>(n) * n) {
        auto product_sampler = [n, alpha](std::size_t c, RngStream s) {
            const PointBatch x = measures::sample_cauchy(CauchyParams(n, alpha), c,
                                                         substream(s, 1));
            const PointBatch y = measures::sample_cauchy(CauchyParams(n, alpha), c,
                                                         substream(s, 2));
            PointBatch xy(2 * n, c);
            for (std::size_t i = 0; i < c; ++i) {
                auto dst = xy.point(i);
                auto xs = x.point(i);
                auto ys = y.point(i);
                for (int j = 0; j < n; ++j) {
                    dst[j] = xs[j];
                    dst[n + j] = ys[j];
                }
            }
            return xy;
        };
        out.product_tails = tail_lines(product_sampler, 4.0, 0x7471u, "tail/product");
    }

    for (double p : {1.0, 2.0, 4.0}) {
        // Cor-style moment window plus the Monte Carlo variance guard.
        if (p > 2 * (alpha - n - 1) || p >= alpha - n) {
            out.dropped_p.push_back(p);
            continue;
        }
        auto moment_fn = [&scaled_dev, p](std::span<const double> xy) {
            return std::pow(scaled_dev(xy), p);
        };
        const MCEstimate m =
            mc_estimate(moment_fn, pair_sampler, count, substream(stream, 0x7d6du));
        const double bound =
            std::pow(alpha - n, p / 2) * special::lipschitz_moment_bound(n, alpha, p);
        out.moments.push_back(make_report(
            "moment/" + f.describe() + "/p=" + detail::fmt_num(p), m,
            MCEstimate::exact_value(bound)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise product domination: the density ratio
//   w_pair(x, y) / (w(x) w(y))  >=  d = Gamma(alpha-n/2)^2/(Gamma(alpha-n)Gamma(alpha)),
// with equality exactly at the origin.  Probes are drawn from both the pair
// law and the product law; the observed infimum and its argmin are reported.
// ---------------------------------------------------------------------------

struct DominationReport {
    double d = 0;
    double observed_min = 0;
    std::vector<double> argmin;
    std::size_t probes = 0;
    bool ok = false;  // observed_min >= d (1 - 1e-10)
};

inline DominationReport product_domination_check(CauchyParams params, std::size_t probe_count,
                                                 RngStream stream) {
    const int n = params.n;
    const double alpha = params.alpha;
    require_domain(alpha > n, "product_domination_check requires alpha > n (pair measure)");
    DominationReport out;
    out.d = special::product_bound_d(n, alpha);
    const double log_d = std::log(out.d);

    auto log_ratio = [&](std::span<const double> xy) {
        const auto x = xy.subspan(0, static_cast<std::size_t>(n));
        const auto y = xy.subspan(static_cast<std::size_t>(n));
        return log_d + alpha * (std::log1p(squared_norm(x)) + std::log1p(squared_norm(y)) -
                                std::log1p(squared_norm(x) + squared_norm(y)));
    };

    // The origin attains the bound; start the infimum there.
    std::vector<double> origin(2 * n, 0.0);
    double min_log = log_ratio(std::span<const double>(origin));
    std::vector<double> argmin = origin;

    const std::size_t half = probe_count / 2;
    const PointBatch pair_probes =
        measures::sample_cauchy(CauchyParams(2 * n, alpha), half, substream(stream, 0x646f31u));
    const PointBatch x_probes =
        measures::sample_cauchy(params, probe_count - half, substream(stream, 0x646f32u));
    const PointBatch y_probes =
        measures::sample_cauchy(params, probe_count - half, substream(stream, 0x646f33u));

    std::vector<double> buf(2 * n);
    auto consider = [&](std::span<const double> xy) {
        const double lr = log_ratio(xy);
        if (lr < min_log) {
            min_log = lr;
            argmin.assign(xy.begin(), xy.end());
        }
    };
    for (std::size_t i = 0; i < pair_probes.count(); ++i) consider(pair_probes.point(i));
    for (std::size_t i = 0; i < x_probes.count(); ++i) {
        auto xs = x_probes.point(i);
        auto ys = y_probes.point(i);
        for (int j = 0; j < n; ++j) {
            buf[j] = xs[j];
            buf[n + j] = ys[j];
        }
        consider(std::span<const double>(buf));
    }
    out.observed_min = std::exp(min_log);
    out.argmin = std::move(argmin);
    out.probes = probe_count + 1;
    out.ok = out.observed_min >= out.d * (1 - 1e-10);
    return out;
}

}  // namespace cup::verify
