#pragma once

// The spherical-cup transform: the quarter-turn average of rotations
//   U_t(x, y) = (x cos t + y sin t, -x sin t + y cos t)
// acting on pair measures.  Realized two ways: as a pushforward sampler for
// arbitrary pair laws (any n), and as a grid operator on densities over
// R^1 x R^1 via
//   (Uw)(u, v) = (2/pi) int_0^{pi/2} w(u cos t - v sin t, u sin t + v cos t) dt.
// Per sample, |u|^2 + |v|^2 = |x|^2 + |y|^2 exactly (orthogonality), which is
// the crucial energy identity behind every report built on the transform.

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cup/batch.hpp"
#include "cup/errors.hpp"
#include "cup/parallel.hpp"
#include "cup/quadrature.hpp"
#include "cup/rng.hpp"

namespace cup::transform {

inline void apply_rotation(std::span<const double> x, std::span<const double> y, double t,
                           std::span<double> u, std::span<double> v) {
    require_domain(x.size() == y.size() && u.size() == x.size() && v.size() == x.size(),
                   "apply_rotation: x and y must have the same dimension");
    const double c = std::cos(t), s = std::sin(t);
    for (std::size_t i = 0; i < x.size(); ++i) {
        u[i] = x[i] * c + y[i] * s;
        v[i] = -x[i] * s + y[i] * c;
    }
}

/// Draws from the spherical cup of the pair law produced by pair_sampler.
/// pair_sampler(count, stream) must return a PointBatch of even dimension 2n
/// holding (x, y) pairs; the output batch holds (u, v) = U_t(x, y) with
/// t ~ Uniform[0, pi/2] independent per sample.
template <class PairSampler>
PointBatch cup_sample(PairSampler&& pair_sampler, std::size_t count, RngStream stream) {
    PointBatch pairs = pair_sampler(count, substream(stream, 0x706169u));
    require_domain(pairs.dim % 2 == 0, "cup_sample: pair batch dimension must be even");
    const int n = pairs.dim / 2;
    rng::Generator angle_gen(substream(stream, 0x616e67u));
    PointBatch out(pairs.dim, count);
    for (std::size_t i = 0; i < count; ++i) {
        auto p = pairs.point(i);
        auto q = out.point(i);
        const double t = angle_gen.uniform(0.0, std::numbers::pi / 2);
        apply_rotation(p.subspan(0, n), p.subspan(n, n), t, q.subspan(0, n), q.subspan(n, n));
    }
    return out;
}

/// A density sampled at the cell centers of the square [-L, L]^2, spacing
/// h = 2L/M.  Entry (i, j) sits at (x_i, y_j) = (-L + (i+1/2)h, -L + (j+1/2)h)
/// and is stored at values[i*M + j].
struct GridDensity2D {
    double half_width = 0;
    int cells = 0;
    std::vector<double> values;

    GridDensity2D() = default;
    GridDensity2D(double L, int M) : half_width(L), cells(M) {
        require_config(L > 0, "GridDensity2D: half_width must be positive");
        require_config(M >= 4, "GridDensity2D: degenerate grid, need at least 4 cells per axis");
        values.assign(static_cast<std::size_t>(M) * M, 0.0);
    }

    double spacing() const { return 2 * half_width / cells; }

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cells + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cells + j]; }

    double coord(int i) const { return -half_width + (i + 0.5) * spacing(); }

    /// Bilinear interpolation, zero outside the grid.
    double value_at(double x, double y) const {
        const double h = spacing();
        const double fx = (x + half_width) / h - 0.5;
        const double fy = (y + half_width) / h - 0.5;
        const int i0 = static_cast<int>(std::floor(fx));
        const int j0 = static_cast<int>(std::floor(fy));
        const double dx = fx - i0, dy = fy - j0;
        auto cell = [&](int i, int j) -> double {
            if (i < 0 || i >= cells || j < 0 || j >= cells) return 0.0;
            return at(i, j);
        };
        return cell(i0, j0) * (1 - dx) * (1 - dy) + cell(i0 + 1, j0) * dx * (1 - dy) +
               cell(i0, j0 + 1) * (1 - dx) * dy + cell(i0 + 1, j0 + 1) * dx * dy;
    }

    template <class F>
    static GridDensity2D tabulate(double L, int M, F&& f) {
        GridDensity2D g(L, M);
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) g.at(i, j) = f(g.coord(i), g.coord(j));
        return g;
    }

    /// Discrete L^p norm with cell measure h^2; p may be infinity.
    double lp_norm(double p) const {
        const double h2 = spacing() * spacing();
        if (std::isinf(p)) {
            double m = 0;
            for (double v : values) m = std::max(m, std::fabs(v));
            return m;
        }
        double s = 0;
        for (double v : values) s += std::pow(std::fabs(v), p);
        return std::pow(s * h2, 1.0 / p);
    }

    double mass() const {
        double s = 0;
        for (double v : values) s += v;
        return s * spacing() * spacing();
    }

    void write_csv(std::ostream& os) const {
        os << half_width << "," << cells << "\n";
        os.precision(17);  // round-trips doubles exactly
        for (int i = 0; i < cells; ++i) {
            for (int j = 0; j < cells; ++j) {
                if (j) os << ",";
                os << at(i, j);
            }
            os << "\n";
        }
    }

    void write_csv(const std::string& path) const {
        std::ofstream os(path);
        require_config(static_cast<bool>(os), "GridDensity2D: cannot open " + path);
        write_csv(os);
    }

    static GridDensity2D read_csv(std::istream& is) {
        std::string line;
        require_config(static_cast<bool>(std::getline(is, line)),
                       "GridDensity2D: empty CSV input");
        std::istringstream header(line);
        double L = 0;
        int M = 0;
        char comma = 0;
        require_config(static_cast<bool>(header >> L >> comma >> M) && comma == ',',
                       "GridDensity2D: malformed CSV header, expected 'L,M'");
        GridDensity2D g(L, M);
        for (int i = 0; i < M; ++i) {
            require_config(static_cast<bool>(std::getline(is, line)),
                           "GridDensity2D: truncated CSV body");
            std::istringstream row(line);
            std::string tok;
            for (int j = 0; j < M; ++j) {
                require_config(static_cast<bool>(std::getline(row, tok, ',')),
                               "GridDensity2D: short CSV row");
                g.at(i, j) = std::strtod(tok.c_str(), nullptr);
            }
        }
        return g;
    }

    static GridDensity2D read_csv_file(const std::string& path) {
        std::ifstream is(path);
        require_config(static_cast<bool>(is), "GridDensity2D: cannot open " + path);
        return read_csv(is);
    }
};

struct QuadratureSpec {
    int node_count = 64;
    enum class Rule { gauss_legendre, midpoint } rule = Rule::gauss_legendre;
};

namespace detail {

/// Angles and probability weights (summing to 1) for the t-average over [0, pi/2].
inline void cup_angles(const QuadratureSpec& spec, std::vector<double>& t,
                       std::vector<double>& w) {
    require_config(spec.node_count >= 2, "QuadratureSpec: node_count must be >= 2");
    const double quarter = std::numbers::pi / 2;
    t.resize(spec.node_count);
    w.resize(spec.node_count);
    if (spec.rule == QuadratureSpec::Rule::midpoint) {
        for (int k = 0; k < spec.node_count; ++k) {
            t[k] = (k + 0.5) * quarter / spec.node_count;
            w[k] = 1.0 / spec.node_count;
        }
        return;
    }
    const quad::Rule rule = quad::gauss_legendre(spec.node_count);
    for (int k = 0; k < spec.node_count; ++k) {
        t[k] = 0.5 * quarter * (rule.nodes[k] + 1.0);
        w[k] = 0.5 * rule.weights[k];  // GL weights sum to 2
    }
}

}  // namespace detail

/// Grid realization of the transform for n = 1 (pair space R^2): evaluates the
/// input density at rotated points by bilinear interpolation, zero outside the
/// grid.  Linear and positivity-preserving in w; output rows are computed
/// independently.
inline GridDensity2D cup_density_grid_1d(const GridDensity2D& w, QuadratureSpec spec = {}) {
    require_config(w.cells >= 4, "cup_density_grid_1d: degenerate grid (M < 4)");
    std::vector<double> t, wt;
    detail::cup_angles(spec, t, wt);
    std::vector<double> ct(t.size()), st(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        ct[k] = std::cos(t[k]);
        st[k] = std::sin(t[k]);
    }
    GridDensity2D out(w.half_width, w.cells);
    parallel_for(static_cast<std::size_t>(w.cells), [&](std::size_t row) {
        const int i = static_cast<int>(row);
        const double u = out.coord(i);
        for (int j = 0; j < w.cells; ++j) {
            const double v = out.coord(j);
            double acc = 0;
            for (std::size_t k = 0; k < t.size(); ++k)
                acc += wt[k] * w.value_at(u * ct[k] - v * st[k], u * st[k] + v * ct[k]);
            out.at(i, j) = acc;
        }
    });
    return out;
}

/// Discrete L^p norms of w and Uw.  tol = max(10 h^2, 10/N^2) is the error
/// model of the grid realization; contraction_ok and isometry_ok report
/// ratio <= 1 + tol and |ratio - 1| <= tol.
struct NormCheck {
    double p = 2;
    double in_norm = 0;
    double out_norm = 0;
    double ratio = 0;
    double tol = 0;
    bool contraction_ok = false;
    bool isometry_ok = false;
};

inline NormCheck cup_operator_norm_check(const GridDensity2D& w, QuadratureSpec spec, double p) {
    require_domain(p >= 1, "cup_operator_norm_check requires p in [1, inf]");
    // Truncation precondition: the zero-extension bias is negligible only
    // when essentially all mass sits well inside the grid.
    double inside = 0, total = 0;
    for (int i = 0; i < w.cells; ++i)
        for (int j = 0; j < w.cells; ++j) {
            const double v = std::fabs(w.at(i, j));
            total += v;
            if (std::fabs(w.coord(i)) <= w.half_width / 2 &&
                std::fabs(w.coord(j)) <= w.half_width / 2)
                inside += v;
        }
    require_config(total > 0, "cup_operator_norm_check: zero density");
    require_config(total - inside <= 1e-10 * total,
                   "cup_operator_norm_check: support too close to the grid boundary "
                   "(mass outside [-L/2, L/2]^2 exceeds 1e-10 of the total); "
                   "enlarge the grid before trusting the norms");
    const GridDensity2D uw = cup_density_grid_1d(w, spec);
    NormCheck r;
    r.p = p;
    r.in_norm = w.lp_norm(p);
    r.out_norm = uw.lp_norm(p);
    r.ratio = r.out_norm / r.in_norm;
    const double h = w.spacing();
    r.tol = std::max(10 * h * h, 10.0 / (static_cast<double>(spec.node_count) * spec.node_count));
    r.contraction_ok = r.ratio <= 1 + r.tol;
    r.isometry_ok = std::fabs(r.ratio - 1) <= r.tol;
    return r;
}

}  // namespace cup::transform
