#pragma once

// 1-D quadrature: Gauss-Legendre nodes by Newton iteration, adaptive Simpson,
// and half-line integrals through the tangent substitution r = tan(u), which
// turns polynomially decaying radial integrands into smooth ones on [0, pi/2].

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "cup/errors.hpp"

namespace cup::quad {

struct Rule {
    std::vector<double> nodes;    // in (-1, 1)
    std::vector<double> weights;  // sum to 2
};

inline Rule gauss_legendre(int n) {
    require_config(n >= 2, "gauss_legendre requires at least 2 nodes");
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = 0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * x * p1 - j * p2) / (j + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1 - x * x) * pp * pp);
    }
    return r;
}

template <class F>
double gauss(const F& f, double a, double b, const Rule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double m, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15 * tol) return left + right + err / 15;
    return simpson_step(f, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_step(f, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return detail::simpson_step(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

/// Integral of f over [0, inf) for integrands with polynomial or faster decay:
/// substitute r = tan(u) and integrate the smooth transform over [0, pi/2).
template <class F>
double integrate_half_line(const F& f, double tol = 1e-12) {
    auto g = [&f](double u) {
        const double c = std::cos(u);
        if (c <= 0) return 0.0;
        const double t = std::sin(u) / c;
        return f(t) / (c * c);
    };
    // Stop just short of pi/2; the transform vanishes there for every
    // integrable radial kernel used in this suite.
    const double top = std::numbers::pi / 2 - 1e-12;
    return adaptive_simpson(g, 0.0, top, tol);
}

template <class F>
double integrate_real_line(const F& f, double tol = 1e-12) {
    return integrate_half_line([&f](double r) { return f(r) + f(-r); }, tol);
}

}  // namespace cup::quad
