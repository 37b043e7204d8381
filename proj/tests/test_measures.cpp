#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "cup/measures.hpp"
#include "oracles.hpp"

using namespace cup;
using namespace cup::measures;
using Catch::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / v.size();
}

double se_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s2 = 0;
    for (double x : v) s2 += (x - m) * (x - m);
    return std::sqrt(s2 / (v.size() - 1) / v.size());
}

std::vector<double> collect(const PointBatch& b, auto&& f) {
    std::vector<double> out;
    out.reserve(b.count());
    for (std::size_t i = 0; i < b.count(); ++i) out.push_back(f(b.point(i)));
    return out;
}

}  // namespace

TEST_CASE("identical streams reproduce bit-identical batches") {
    const RngStream s{987, 3};
    const PointBatch a = sample_cauchy(CauchyParams(3, 2.5), 5000, s);
    const PointBatch b = sample_cauchy(CauchyParams(3, 2.5), 5000, s);
    REQUIRE(a.data.size() == b.data.size());
    CHECK(a.data == b.data);
    const PointBatch c = sample_cauchy(CauchyParams(3, 2.5), 5000, substream(s, 1));
    CHECK(a.data != c.data);
}

TEST_CASE("gaussian sampler moments") {
    const RngStream s{11, 0};
    CHECK(sample_std_gaussian(1, 0, s).count() == 0);

    const auto b3 = sample_std_gaussian(3, 1000000, s);
    const auto sq = collect(b3, [](auto p) { return squared_norm(p); });
    CHECK(std::fabs(mean_of(sq) - 3.0) < 5 * se_of(sq));

    const auto b1 = sample_std_gaussian(1, 1000000, substream(s, 7));
    const auto ab = collect(b1, [](auto p) { return std::fabs(p[0]); });
    CHECK(std::fabs(mean_of(ab) - std::sqrt(2 / kPi)) < 5 * se_of(ab));

    const double ks = oracle::ks_distance(collect(b1, [](auto p) { return p[0]; }),
                                          [](double x) { return std_normal_cdf(x); });
    CHECK(ks < 0.002);

    // Radial law |Z| matches the chi CDF for n <= 3.
    for (int n : {1, 2, 3}) {
        const auto bn = sample_std_gaussian(n, 1000000, substream(s, 20 + n));
        const double ksr = oracle::ks_distance(
            collect(bn, [](auto p) { return norm(p); }),
            [n](double r) { return gaussian_radial_cdf(n, r); });
        INFO("n = " << n);
        CHECK(ksr < 0.002);
    }
}

TEST_CASE("chi sampler: median, positivity, half-normal case, moments") {
    const RngStream s{22, 0};
    auto b2 = sample_chi(2.0, 1000000, s);
    bool all_positive = true;
    for (double v : b2.data) all_positive = all_positive && v > 0;
    CHECK(all_positive);

    // chi_2 CDF is 1 - exp(-r^2/2); median = sqrt(2 ln 2).
    std::sort(b2.data.begin(), b2.data.end());
    const double target = std::sqrt(2 * std::log(2.0));
    const double med = b2.data[b2.data.size() / 2];
    const double density_at_med = target * 0.5;  // r e^{-r^2/2} at the median
    const double se_quantile = std::sqrt(0.25 / b2.data.size()) / density_at_med;
    CHECK(std::fabs(med - target) < 5 * se_quantile);

    // d = 1 is the half-normal law.
    const auto b1 = sample_chi(1.0, 1000000, substream(s, 1));
    const double ks1 = oracle::ks_distance(
        b1.data, [](double r) { return r <= 0 ? 0.0 : 2 * std_normal_cdf(r) - 1; });
    CHECK(ks1 < 0.002);

    // E eta^2 = d for non-integer d.
    const double d = 3.7;
    const auto bd = sample_chi(d, 1000000, substream(s, 2));
    const auto sq = collect(bd, [](auto p) { return p[0] * p[0]; });
    CHECK(std::fabs(mean_of(sq) - d) < 5 * se_of(sq));
    const double ksd = oracle::ks_distance(bd.data, [d](double r) { return chi_cdf(d, r); });
    CHECK(ksd < 0.002);

    // Tiny degrees of freedom stress the gamma-boost underflow guard.
    const auto btiny = sample_chi(0.05, 100000, substream(s, 3));
    bool tiny_positive = true;
    for (double v : btiny.data) tiny_positive = tiny_positive && v > 0 && std::isfinite(v);
    CHECK(tiny_positive);

    CHECK_THROWS_AS(sample_chi(0.0, 10, s), domain_error);
}

TEST_CASE("cauchy sampler agrees with the radial and coordinate laws") {
    const RngStream s{33, 0};

    // Standard 1-D Cauchy: quartiles at +-1.
    auto b11 = sample_cauchy(CauchyParams(1, 1), 1000000, s);
    std::sort(b11.data.begin(), b11.data.end());
    const double q1 = b11.data[b11.data.size() / 4];
    const double q3 = b11.data[3 * b11.data.size() / 4];
    const double se_q = std::sqrt(0.1875 / b11.data.size()) / (1.0 / (2 * kPi));
    CHECK(std::fabs(q1 + 1.0) < 5 * se_q);
    CHECK(std::fabs(q3 - 1.0) < 5 * se_q);
    const double ks11 =
        oracle::ks_distance(b11.data, [](double c) { return cauchy1_cdf(1.0, c); });
    CHECK(ks11 < 0.002);

    // Second moment of the (n=2, alpha=3) law: n/(2 alpha - n - 2) = 1.
    const auto b23 = sample_cauchy(CauchyParams(2, 3), 1000000, substream(s, 1));
    const auto sq = collect(b23, [](auto p) { return squared_norm(p); });
    CHECK(std::fabs(mean_of(sq) - 1.0) < 5 * se_of(sq));

    // Symmetry: mean of a coordinate is 0.
    const auto b12 = sample_cauchy(CauchyParams(1, 2), 1000000, substream(s, 2));
    const auto xs = collect(b12, [](auto p) { return p[0]; });
    CHECK(std::fabs(mean_of(xs)) < 5 * se_of(xs));

    // Radial law against the incomplete-beta CDF for n <= 3.
    for (int n : {1, 2, 3}) {
        const CauchyParams params(n, 0.5 * n + 1.25);
        const auto b = sample_cauchy(params, 1000000, substream(s, 10 + n));
        const double ks = oracle::ks_distance(
            collect(b, [](auto p) { return norm(p); }),
            [&params](double r) { return cauchy_radial_cdf(params, r); });
        INFO("n = " << n);
        CHECK(ks < 0.002);
    }
}

TEST_CASE("projection closure: first coordinate of m(3,2) has the m(1,1) law") {
    CHECK(marginal_order(3, 1, 2.0) == Approx(1.0));
    const auto b = sample_cauchy(CauchyParams(3, 2), 1000000, RngStream{44, 0});
    const double beta = marginal_order(3, 1, 2.0);
    const double ks = oracle::ks_distance(collect(b, [](auto p) { return p[0]; }),
                                          [beta](double c) { return cauchy1_cdf(beta, c); });
    CHECK(ks < 0.002);
}

TEST_CASE("projection closure holds for a k-dimensional block") {
    const auto b = sample_cauchy(CauchyParams(3, 2.4), 1000000, RngStream{45, 0});
    const CauchyParams proj(2, marginal_order(3, 2, 2.4));
    const double ks = oracle::ks_distance(
        collect(b, [](auto p) { return std::sqrt(p[0] * p[0] + p[1] * p[1]); }),
        [&proj](double r) { return cauchy_radial_cdf(proj, r); });
    CHECK(ks < 0.002);
}

TEST_CASE("marginal_order identities and errors") {
    CHECK(marginal_order(4, 2, 3.0) == Approx(2.0));  // pair space to one half
    CHECK(marginal_order(5, 5, 3.1) == Approx(3.1));  // identity projection
    CHECK(marginal_order(2, 1, 1.5) > 0.5);
    CHECK_THROWS_AS(marginal_order(2, 3, 5.0), domain_error);
    CHECK_THROWS_AS(marginal_order(4, 1, 1.0), domain_error);
}

TEST_CASE("gaussian limit: sqrt(2 alpha) scaled cauchy approaches the gaussian") {
    const double alpha = 1e4;
    const auto b = sample_cauchy(CauchyParams(2, alpha), 1000000, RngStream{55, 0});
    const double scale = std::sqrt(2 * alpha);
    for (int coord : {0, 1}) {
        const double ks = oracle::ks_distance(
            collect(b, [coord, scale](auto p) { return scale * p[coord]; }),
            [](double x) { return std_normal_cdf(x); });
        CHECK(ks < 0.01);
    }
}

TEST_CASE("cauchy log density") {
    const CauchyParams p11(1, 1);
    const double x0[] = {0.0};
    const double x1[] = {1.0};
    CHECK(cauchy_log_density(p11, x0) == Approx(-std::log(kPi)).epsilon(1e-14));
    CHECK(cauchy_log_density(p11, x1) == Approx(-std::log(2 * kPi)).epsilon(1e-14));
    const CauchyParams p32(3, 2);
    const double origin[] = {0.0, 0.0, 0.0};
    CHECK(cauchy_log_density(p32, origin) ==
          Approx(-std::log(special::cauchy_norm_const(3, 2))).epsilon(1e-14));
    const double wrong_dim[] = {1.0, 2.0};
    CHECK_THROWS_AS(cauchy_log_density(p32, std::span<const double>(wrong_dim)), domain_error);
}

TEST_CASE("cauchy radial moments") {
    CHECK(cauchy_radial_moment(CauchyParams(1, 2), 2) == Approx(1.0).epsilon(1e-13));
    CHECK(cauchy_radial_moment(CauchyParams(3, 7.5), 0) == Approx(1.0).epsilon(1e-14));
    CHECK(cauchy_radial_moment(CauchyParams(2, 4), 2) == Approx(0.5).epsilon(1e-13));
    // 2-D radial quadrature oracle for (n=2, alpha=4, p=2).
    const double num = oracle::romberg_half_line(
        [](double r) { return r * r * 2 * kPi * r / std::pow(1 + r * r, 4); });
    CHECK(cauchy_radial_moment(CauchyParams(2, 4), 2) ==
          Approx(num / special::cauchy_norm_const(2, 4)).epsilon(1e-9));
    CHECK_THROWS_AS(cauchy_radial_moment(CauchyParams(1, 2), 3.0), domain_error);
    CHECK_THROWS_WITH(cauchy_radial_moment(CauchyParams(2, 3), 4.2),
                      Catch::Matchers::ContainsSubstring("p < 2 alpha - n"));
}

TEST_CASE("sphere sampler") {
    const RngStream s{66, 0};
    const auto b = sample_sphere_uniform(4, 1000000, s);
    double max_norm_err = 0;
    for (std::size_t i = 0; i < b.count(); ++i)
        max_norm_err = std::max(max_norm_err, std::fabs(norm(b.point(i)) - 1.0));
    CHECK(max_norm_err < 1e-12);

    const auto x1 = collect(b, [](auto p) { return p[0]; });
    CHECK(std::fabs(mean_of(x1)) < 5 * se_of(x1));
    const auto x1sq = collect(b, [](auto p) { return p[0] * p[0]; });
    CHECK(std::fabs(mean_of(x1sq) - 0.25) < 5 * se_of(x1sq));

    CHECK_THROWS_AS(sample_sphere_uniform(1, 10, s), domain_error);
}

TEST_CASE("ball marginal: density, isotropic function, sampling") {
    const auto bm = ball_marginal(2);
    const double origin2[] = {0.0, 0.0};
    CHECK(bm.density(origin2) == Approx(1 / kPi).epsilon(1e-14));
    const double outside[] = {1.2, 0.0};
    CHECK(bm.density(outside) == 0.0);
    CHECK(bm.sigma2(origin2) == Approx(0.5).epsilon(1e-14));

    const auto bm3 = ball_marginal(3);
    const double x[] = {0.3, -0.4, 0.1};
    CHECK(bm3.sigma2(x) == Approx((1 - 0.26) / 3).epsilon(1e-13));

    // The density integrates to 1.  The radial oracle substitutes r = sin(phi)
    // so the (1-r^2)^{n/2-1} endpoint singularity at n = 1 disappears.
    for (int n : {1, 2, 3, 5}) {
        const auto m = ball_marginal(n);
        const double mass = oracle::romberg(
            [&m, n](double phi) {
                const double r = std::sin(phi);
                std::vector<double> u(n, 0.0);
                u[0] = r;
                const double surf = n *
                                    std::exp(0.5 * n * std::log(kPi) -
                                             oracle::lanczos_log_gamma(n / 2.0 + 1)) *
                                    std::pow(r, n - 1);
                return surf * m.density(u) * std::cos(phi);
            },
            0.0, kPi / 2 - 1e-12);
        INFO("n = " << n);
        CHECK(mass == Approx(1.0).margin(2e-6));
    }

    // E(1 - |u|^2) = 1/2 for every n, by Monte Carlo.
    for (int n : {1, 2, 4}) {
        const auto sample = ball_marginal(n).sample(1000000, RngStream{77, 7});
        const auto vals = collect(sample, [](auto p) { return 1 - squared_norm(p); });
        INFO("n = " << n);
        CHECK(std::fabs(mean_of(vals) - 0.5) < 5 * se_of(vals));
    }

    // Samples follow the marginal law: |u|^2 ~ Beta(n/2, n/2), uniform for n = 2.
    const auto sample2 = ball_marginal(2).sample(1000000, RngStream{78, 0});
    const double ks = oracle::ks_distance(
        collect(sample2, [](auto p) { return squared_norm(p); }),
        [](double t) { return std::clamp(t, 0.0, 1.0); });
    CHECK(ks < 0.002);
}

TEST_CASE("CauchyParams rejects non-integrable orders") {
    CHECK_THROWS_WITH(CauchyParams(2, 1.0), Catch::Matchers::ContainsSubstring("alpha > n/2"));
    CHECK(CauchyParams(2, 3).dof() == Approx(4.0));
}
