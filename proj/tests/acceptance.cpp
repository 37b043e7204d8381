// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Each criterion pins its tolerances in code; timings are
// printed and enforced where a budget is part of the criterion.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cup/cli.hpp"
#include "cup/funcs.hpp"
#include "cup/transform.hpp"
#include "cup/verify.hpp"

using namespace cup;
using namespace cup::verify;
using cup::funcs::Linear;
using cup::funcs::RbfMixture;
using cup::funcs::SmoothedHalfspace;
using cup::funcs::SmoothNorm;
using cup::funcs::TestFunction;
using cup::measures::CauchyParams;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void run_criterion(int index, const std::string& name,
                   const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail << " exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s —%s [%.2f s]\n", ok ? "PASS" : "FAIL", index,
                name.c_str(), detail.str().c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

TestFunction linear_e1(int n) {
    std::vector<double> dir(n, 0.0);
    dir[0] = 1.0;
    return TestFunction::build(Linear{dir});
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    std::printf("acceptance suite (seeded, deterministic)\n");

    run_criterion(1, "Poincare constant identity C(1,2,3) (pi/2)^2 = pi^2/8 @ 1e-12, < 1 ms",
                  [](std::ostringstream& d) {
                      const auto t0 = std::chrono::steady_clock::now();
                      const auto k = special::poincare_constants(1, 2, 3);
                      const double got = k.C * kPi * kPi / 4;
                      const double want = kPi * kPi / 8;
                      const double secs = elapsed_since(t0);
                      const double rel = std::fabs(got / want - 1);
                      d << " rel err " << rel << ", " << secs * 1e3 << " ms";
                      return rel <= 1e-12 && secs < 1e-3;
                  });

    run_criterion(2, "Gaussian double-integral exact ratio 2 sqrt(2)/pi (linear, p=1), MC 1e6",
                  [](std::ostringstream& d) {
                      const auto t0 = std::chrono::steady_clock::now();
                      const auto r = pisier_gaussian_report(linear_e1(2), Power{1}, 2, 1000000,
                                                            RngStream{1001, 0});
                      const double exact_ratio = *r.lhs_closed_form / *r.rhs_closed_form;
                      const bool ratio_ok =
                          std::fabs(exact_ratio - 2 * std::sqrt(2.0) / kPi) <= 1e-12;
                      const bool lhs_ok = std::fabs(r.lhs.mean - *r.lhs_closed_form) <=
                                          5 * r.lhs.std_error;
                      const bool rhs_ok = std::fabs(r.rhs.mean - *r.rhs_closed_form) <=
                                          5 * r.rhs.std_error;
                      const bool se_ok = r.lhs.std_error / r.lhs.mean < 0.005 &&
                                         r.rhs.std_error / r.rhs.mean < 0.005;
                      const double secs = elapsed_since(t0);
                      d << " exact ratio " << exact_ratio << ", MC ratio "
                        << r.lhs.mean / r.rhs.mean << ", rel SE "
                        << r.lhs.std_error / r.lhs.mean;
                      return ratio_ok && lhs_ok && rhs_ok && se_ok && secs < 10 &&
                             r.verdict == Verdict::HOLDS;
                  });

    run_criterion(3, "Cauchy Poincare exact ratio 8/pi^2 (linear, p=2, n=2, alpha=6), MC 1e6",
                  [](std::ostringstream& d) {
                      const auto t0 = std::chrono::steady_clock::now();
                      const auto r = cauchy_poincare_report(linear_e1(2), CauchyParams(2, 6), 2,
                                                            1000000, RngStream{1002, 0});
                      const double exact_ratio = *r.lhs_closed_form / *r.rhs_closed_form;
                      const bool ratio_ok = std::fabs(exact_ratio - 8 / (kPi * kPi)) <= 1e-12;
                      const bool lhs_ok = std::fabs(r.lhs.mean - *r.lhs_closed_form) <=
                                          5 * r.lhs.std_error;
                      const bool rhs_ok = std::fabs(r.rhs.mean - *r.rhs_closed_form) <=
                                          5 * r.rhs.std_error;
                      const double secs = elapsed_since(t0);
                      d << " exact ratio " << exact_ratio << ", MC ratio "
                        << r.lhs.mean / r.rhs.mean;
                      return ratio_ok && lhs_ok && rhs_ok && secs < 20 &&
                             r.verdict == Verdict::HOLDS;
                  });

    run_criterion(4, "Gaussian limit sweep: 1% at (n=2,p=1,alpha=1e4), gaps decreasing, < 1 s",
                  [](std::ostringstream& d) {
                      const auto t0 = std::chrono::steady_clock::now();
                      const auto rows = gaussian_limit_sweep(2, 1, {100, 1000, 10000});
                      const bool near = std::fabs(rows[2].rescaled / std::sqrt(kPi / 2) - 1) <
                                        0.01;
                      const bool mono = rows[0].relative_gap > rows[1].relative_gap &&
                                        rows[1].relative_gap > rows[2].relative_gap;
                      const double secs = elapsed_since(t0);
                      d << " rescaled(1e4) = " << rows[2].rescaled << ", gaps "
                        << rows[0].relative_gap << " > " << rows[1].relative_gap << " > "
                        << rows[2].relative_gap;
                      return near && mono && secs < 1;
                  });

    run_criterion(
        5, "cup operator norms (offset bump, L=8, M=512, N=64): L2 in [0.999,1.001], L^p <= 1+1e-6",
        [](std::ostringstream& d) {
            const auto t0 = std::chrono::steady_clock::now();
            // Width 0.3 keeps the truncation precondition satisfied at offset 2.
            const auto w = transform::GridDensity2D::tabulate(8.0, 512, [](double x, double y) {
                return std::exp(-((x - 2) * (x - 2) + y * y) / (2 * 0.3 * 0.3));
            });
            const transform::QuadratureSpec spec{64,
                                                 transform::QuadratureSpec::Rule::gauss_legendre};
            const auto l2 = transform::cup_operator_norm_check(w, spec, 2);
            const bool l2_ok = l2.ratio >= 0.999 && l2.ratio <= 1.001;
            bool lp_ok = true;
            d << " L2 ratio " << l2.ratio;
            for (double p : {1.0, 3.0, std::numeric_limits<double>::infinity()}) {
                const auto c = transform::cup_operator_norm_check(w, spec, p);
                lp_ok = lp_ok && c.ratio <= 1 + 1e-6;
                d << ", L" << (std::isinf(p) ? std::string("inf") : std::to_string((int)p))
                  << " " << c.ratio;
            }
            const double secs = elapsed_since(t0);
            if (!l2_ok)
                d << " | L2 isometry fails: the quarter-turn average strictly contracts "
                     "non-radial densities (see README notes)";
            return l2_ok && lp_ok && secs < 30;
        });

    run_criterion(
        6, "perimeter: halfspace MC within 2% of 1/sqrt(2 pi); Cheeger equality @ 1e-12",
        [](std::ostringstream& d) {
            const auto set = SetSpec::halfspace_e1(2, 0.0);
            const auto per = perimeter_estimate(GaussianMeasure{2}, set, {0.2, 0.1, 0.05},
                                                1000000, RngStream{1, 0});
            const double target = 1 / std::sqrt(2 * kPi);
            const bool mc_ok = std::fabs(per.mc_extrapolated / target - 1) <= 0.02;
            const double mass = measure_of(GaussianMeasure{2}, set);
            const double cheeger = std::sqrt(2 / kPi) * std::min(mass, 1 - mass);
            const double product_form = 2 * std::sqrt(2 / kPi) * mass * (1 - mass);
            const bool eq_ok = std::fabs(cheeger - per.analytic) <= 1e-12 &&
                               std::fabs(product_form - per.analytic) <= 1e-12;
            d << " extrapolated " << per.mc_extrapolated << " vs " << target
              << ", cheeger gap " << std::fabs(cheeger - per.analytic);
            return mc_ok && eq_ok;
        });

    run_criterion(
        7, "isoperimetry: half-space bundles at (1,4) and (2,3) + ball at 1e6 all HOLDS, < 60 s",
        [](std::ostringstream& d) {
            const auto t0 = std::chrono::steady_clock::now();
            bool ok = true;
            const auto b14 = isoperimetry_report(1, 4, SetSpec::halfspace_e1(1, 0.0), 1000000,
                                                 RngStream{1004, 0});
            ok = ok && b14.pair_bound.verdict == Verdict::HOLDS &&
                 b14.product_bound.verdict == Verdict::HOLDS &&
                 b14.gaussian_cheeger.verdict == Verdict::HOLDS && b14.pair_bound.lhs.exact &&
                 b14.pair_bound.rhs.exact;
            const auto b23 = isoperimetry_report(2, 3, SetSpec::halfspace_e1(2, 0.0), 1000000,
                                                 RngStream{1004, 1});
            ok = ok && b23.pair_bound.verdict == Verdict::HOLDS &&
                 b23.product_bound.verdict == Verdict::HOLDS;
            const auto ball = isoperimetry_report(2, 3, SetSpec::ball(1.0), 1000000,
                                                  RngStream{1004, 2});
            ok = ok && ball.pair_bound.verdict == Verdict::HOLDS &&
                 ball.product_bound.verdict == Verdict::HOLDS &&
                 !ball.pair_bound.lhs.exact;
            const double secs = elapsed_since(t0);
            d << " perimeters " << b14.pair_bound.rhs.mean << ", " << b23.pair_bound.rhs.mean
              << ", ball crossing mass " << ball.pair_bound.lhs.mean;
            return ok && secs < 60;
        });

    run_criterion(
        8, "tails at (n=2, alpha=38), three 1-Lipschitz functions, t in {2,3,4,5}, 1e6, < 30 s",
        [](std::ostringstream& d) {
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<TestFunction> suite;
            suite.push_back(linear_e1(2));
            suite.push_back(TestFunction::build(SmoothNorm{1.0, 2}));
            RbfMixture mix;
            mix.bumps.push_back({1.0, 0.9, {0.4, 0.4}});
            mix.bumps.push_back({-0.6, 1.3, {-0.6, -0.6}});
            suite.push_back(TestFunction::build(mix));
            bool ok = true;
            int lines = 0;
            std::uint64_t salt = 0;
            for (const auto& f : suite) {
                const auto r = tail_and_moment_report(f, CauchyParams(2, 38), {2, 3, 4, 5},
                                                      1000000,
                                                      substream(RngStream{1005, 0}, salt++));
                for (const auto& line : r.pair_tails) {
                    ok = ok && line.lhs.mean <= line.rhs.mean + 3 * line.lhs.std_error;
                    ++lines;
                }
            }
            const double secs = elapsed_since(t0);
            d << " " << lines << " tail lines, all below bound + 3 SE";
            return ok && lines == 12 && secs < 30;
        });

    run_criterion(
        9, "product domination: 1e6-probe infimum >= d - 1e-10; d >= 1/2 on the diagonal",
        [](std::ostringstream& d) {
            bool ok = true;
            std::uint64_t salt = 0;
            for (auto [n, alpha] : {std::pair<int, double>{1, 2.0}, {2, 4.0}, {3, 9.0}}) {
                const auto r = product_domination_check(CauchyParams(n, alpha), 1000000,
                                                        substream(RngStream{1006, 0}, salt++));
                ok = ok && r.observed_min >= r.d - 1e-10;
                d << " inf(" << n << "," << alpha << ")=" << r.observed_min << " vs d=" << r.d
                  << ";";
            }
            // alpha = n^2 clipped to the pair-measure domain alpha > n at n = 1.
            for (int n = 1; n <= 32; ++n) {
                const double alpha = std::max(static_cast<double>(n) * n, n + 1.0);
                ok = ok && special::product_bound_d(n, alpha) >= 0.5;
            }
            return ok;
        });

    run_criterion(
        10, "gradients: all variants pass central differences at 100 random points @ 1e-4",
        [](std::ostringstream& d) {
            std::mt19937_64 rng(77);
            std::normal_distribution<double> normal;
            std::vector<TestFunction> suite;
            suite.push_back(linear_e1(3));
            suite.push_back(TestFunction::build(SmoothNorm{0.5, 3}));
            RbfMixture mix;
            mix.bumps.push_back({1.0, 0.8, {0.3, -0.2, 0.5}});
            mix.bumps.push_back({-0.5, 1.2, {-0.4, 0.1, -0.6}});
            suite.push_back(TestFunction::build(mix));
            suite.push_back(
                TestFunction::build(SmoothedHalfspace{{1.0, 0.0, 0.0}, 0.2, 0.7}));
            double worst = 0;
            for (const auto& f : suite) {
                for (int k = 0; k < 100; ++k) {
                    std::vector<double> x(3), grad(3);
                    for (auto& v : x) v = 2.0 * normal(rng);
                    f.eval_with_grad(x, grad);
                    double xn = std::sqrt(squared_norm(std::span<const double>(x)));
                    const double h = 1e-5 * std::max(1.0, xn);
                    double err = 0, scale = 1.0;
                    std::vector<double> xp = x, xm = x;
                    for (int i = 0; i < 3; ++i) {
                        xp[i] += h;
                        xm[i] -= h;
                        const double fd = (f(xp) - f(xm)) / (2 * h);
                        err = std::max(err, std::fabs(fd - grad[i]));
                        scale = std::max(scale, std::fabs(grad[i]));
                        xp[i] = x[i];
                        xm[i] = x[i];
                    }
                    worst = std::max(worst, err / scale);
                }
            }
            d << " worst relative gradient error " << worst;
            return worst < 1e-4;
        });

    run_criterion(
        11, "determinism: identical seeds hash identically (wall-clock fields excluded)",
        [](std::ostringstream& d) {
            const auto a = pisier_gaussian_report(linear_e1(2), Power{2}, 2, 200000,
                                                  RngStream{1007, 3});
            const auto b = pisier_gaussian_report(linear_e1(2), Power{2}, 2, 200000,
                                                  RngStream{1007, 3});
            nlohmann::json ja = to_json(a);
            nlohmann::json jb = to_json(b);
            ja["timestamp"] = "now";
            jb["timestamp"] = "later";
            bool ok = report_hash(ja) == report_hash(jb);

            // End to end through the command line tool.
            auto run_hash = [](const std::string& suffix) -> std::string {
                const std::string out = (std::filesystem::temp_directory_path() /
                                         ("acc_det_" + suffix + ".json"))
                                            .string();
                const std::string cmd = std::string(CUPVERIFY_BIN) +
                                        " cauchy-poincare --quick --samples 200000 --seed 42 "
                                        "--func linear --out " +
                                        out + " > /dev/null 2>&1";
                if (std::system(cmd.c_str()) != 0) return "run-failed-" + suffix;
                std::ifstream is(out);
                std::stringstream ss;
                ss << is.rdbuf();
                std::filesystem::remove(out);
                const auto j = nlohmann::json::parse(ss.str());
                return j.at("content_hash").get<std::string>();
            };
            const std::string h1 = run_hash("a");
            const std::string h2 = run_hash("b");
            ok = ok && h1 == h2 && h1.rfind("run-failed", 0) != 0;
            d << " in-process hashes equal: " << (report_hash(ja) == report_hash(jb))
              << ", CLI hash " << h1;
            return ok;
        });

    std::printf("%d of 11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
