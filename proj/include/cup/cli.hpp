#pragma once

// Experiment orchestration behind the command-line tool: a validated config
// is dispatched to one of nine experiments, results are serialized to JSON
// (plus CSV for sweeps and sample dumps, SVG for plots), and the exit code
// reports the outcome: 0 ok, 2 config error, 3 domain error, 4 a VIOLATED
// verdict in any report.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cup/errors.hpp"
#include "cup/funcs.hpp"
#include "cup/measures.hpp"
#include "cup/report.hpp"
#include "cup/sets.hpp"
#include "cup/svg.hpp"
#include "cup/transform.hpp"
#include "cup/verify.hpp"

namespace cup::cli {

struct ExperimentConfig {
    std::string experiment;
    int n = 2;
    double alpha = 6;
    double beta = 4;
    double p = 2;
    std::size_t samples = 1000000;
    std::uint64_t seed = 20240901;
    std::string set = "halfspace:0";
    std::string measure = "gaussian";
    std::vector<std::string> functions;           // variant:params specs
    std::vector<double> alphas = {100, 1000, 10000};
    std::vector<double> t_grid = {2, 3, 4, 5};
    std::vector<double> eps_list = {0.2, 0.1, 0.05};
    // grid experiment parameters
    double grid_half_width = 8;
    int grid_cells = 512;
    int quad_nodes = 64;
    double bump_offset = 2;
    double bump_width = 0.3;
    // outputs
    std::string json_path;
    std::string csv_path;
    std::string plot_path;
    bool quick = false;  // counts / 100 for smoke runs
};

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "constants", "sample",       "cup",   "pisier",      "cauchy-poincare",
        "sphere",    "isoperimetry", "tails", "limit-sweep"};
    return names;
}

inline std::string list_experiments() {
    std::ostringstream os;
    os << "experiments (defaults: --n 2 --alpha 6 --beta 4 --p 2 --samples 1000000 "
          "--seed 20240901 --set halfspace:0)\n";
    os << "  constants: requires alpha > n + 1/2 and 1 <= p < 2(alpha-n) for the Poincare "
          "window; evaluates every closed-form constant\n";
    os << "  sample: dumps draws as CSV; measure gaussian | cauchy (alpha > n/2) | chi "
          "(alpha = degrees of freedom > 0) | sphere | ball\n";
    os << "  cup: grid transform norm checks at tolerance max(10 h^2, 10/N^2); defaults L=8 "
          "M=512 N=64\n";
    os << "  pisier: Gaussian double-integral inequality; Exp path admits linear f only with "
          "|theta| < 2/pi\n";
    os << "  cauchy-poincare: requires alpha > n + 1/2 and 1 <= p < 2(alpha-n); Monte Carlo "
          "additionally needs p < alpha - n\n";
    os << "  sphere: split-sphere inequality; requires n >= 2\n";
    os << "  isoperimetry: requires beta >= (n+1)/2; pair order alpha = beta + (n+1)/2\n";
    os << "  tails: requires alpha >= n + 3/2; t restricted to [0, sqrt(alpha-n)]\n";
    os << "  limit-sweep: every alpha must satisfy the cauchy-poincare window for the "
          "given (n, p)\n";
    return os.str();
}

namespace detail {

inline std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        require_config(end != tok.c_str() && *end == '\0',
                       "bad number '" + tok + "' in list '" + text + "'");
        out.push_back(v);
    }
    return out;
}

inline funcs::TestFunction parse_function(const std::string& text, int dim) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (kind == "linear") {
        std::vector<double> dir;
        if (args.empty()) {
            dir.assign(dim, 0.0);
            dir[0] = 1.0;
        } else {
            dir = parse_numbers(args);
            require_config(static_cast<int>(dir.size()) == dim,
                           "linear: direction needs " + std::to_string(dim) + " components");
        }
        return funcs::TestFunction::build(funcs::Linear{std::move(dir)});
    }
    if (kind == "smoothnorm") {
        const double eps = args.empty() ? 1.0 : parse_numbers(args).at(0);
        return funcs::TestFunction::build(funcs::SmoothNorm{eps, dim});
    }
    if (kind == "rbf") {
        funcs::RbfMixture mix;
        if (args.empty()) {
            // three fixed bumps spread around the origin
            const double c0[] = {1.0, 0.8, -0.5, 0.3};
            for (int b = 0; b < 3; ++b) {
                funcs::RbfBump bump;
                bump.weight = (b == 1 ? -0.7 : 1.0);
                bump.width = 0.8 + 0.3 * b;
                bump.center.assign(dim, 0.0);
                for (int j = 0; j < dim; ++j) bump.center[j] = c0[(b + j) % 4] * (b + 1) * 0.5;
                mix.bumps.push_back(std::move(bump));
            }
        } else {
            std::istringstream is(args);
            std::string part;
            while (std::getline(is, part, ';')) {
                const std::vector<double> v = parse_numbers(part);
                require_config(static_cast<int>(v.size()) == dim + 2,
                               "rbf: each bump needs weight,width,center(" +
                                   std::to_string(dim) + ")");
                funcs::RbfBump bump;
                bump.weight = v[0];
                bump.width = v[1];
                bump.center.assign(v.begin() + 2, v.end());
                mix.bumps.push_back(std::move(bump));
            }
        }
        return funcs::TestFunction::build(std::move(mix));
    }
    if (kind == "halfspace") {
        const std::vector<double> v = args.empty() ? std::vector<double>{0.0, 1.0}
                                                   : parse_numbers(args);
        require_config(v.size() == 2, "halfspace: expected offset,softness");
        std::vector<double> dir(dim, 0.0);
        dir[0] = 1.0;
        return funcs::TestFunction::build(
            funcs::SmoothedHalfspace{std::move(dir), v[0], v[1]});
    }
    throw config_error("unknown function spec '" + text +
                       "' (expected linear|smoothnorm|rbf|halfspace)");
}

inline std::vector<funcs::TestFunction> function_suite(const ExperimentConfig& cfg) {
    std::vector<funcs::TestFunction> fs;
    if (cfg.functions.empty()) {
        fs.push_back(parse_function("linear", cfg.n));
        fs.push_back(parse_function("rbf", cfg.n));
        fs.push_back(parse_function("smoothnorm:1", cfg.n));
    } else {
        for (const auto& s : cfg.functions) fs.push_back(parse_function(s, cfg.n));
    }
    return fs;
}

inline std::string iso_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void collect(nlohmann::json& arr, const verify::InequalityReport& r, bool& violated) {
    arr.push_back(verify::to_json(r));
    if (r.verdict == verify::Verdict::VIOLATED) violated = true;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream os(path);
    require_config(static_cast<bool>(os), "cannot open output file " + path);
    os << body;
}

}  // namespace detail

struct RunResult {
    nlohmann::json document;
    bool violated = false;
};

// ---------------------------------------------------------------------------
// Individual experiments.  Each returns the JSON "results" payload and flags
// whether any verdict came out VIOLATED.
// ---------------------------------------------------------------------------

namespace detail {

inline RunResult run_constants(const ExperimentConfig& cfg) {
    RunResult out;
    const auto k = special::poincare_constants(cfg.n, cfg.p, cfg.alpha);
    nlohmann::json j;
    j["poincare"] = {{"C", k.C},
                     {"A", k.A},
                     {"c_ratio", k.c_ratio},
                     {"beta", k.beta},
                     {"identity_rel_error", std::fabs(k.C - k.A * k.c_ratio) / k.C}};
    j["pisier_cp"] = special::pisier_cp(cfg.p);
    j["gaussian_abs_moment"] = special::gaussian_abs_moment(cfg.n, cfg.p);
    j["spherical_mean_ratio"] = special::spherical_mean_ratio(cfg.n, cfg.p);
    j["cauchy_norm_const"] = special::cauchy_norm_const(cfg.n, cfg.alpha);
    if (cfg.alpha > cfg.n) j["product_bound_d"] = special::product_bound_d(cfg.n, cfg.alpha);
    const auto bounds = special::gamma_inequality_bounds(std::max(0.5, cfg.alpha - cfg.n));
    j["gamma_bounds"] = {{"x", std::max(0.5, cfg.alpha - cfg.n)},
                         {"lower", bounds.lower},
                         {"upper", bounds.upper},
                         {"batir_contains", bounds.batir_contains},
                         {"wendel_holds", bounds.wendel_holds},
                         {"gautschi_holds", bounds.gautschi_holds}};
    out.document = j;
    return out;
}

inline RunResult run_sample(const ExperimentConfig& cfg, std::size_t count, RngStream stream) {
    RunResult out;
    PointBatch batch;
    if (cfg.measure == "gaussian") {
        batch = measures::sample_std_gaussian(cfg.n, count, stream);
    } else if (cfg.measure == "cauchy") {
        batch = measures::sample_cauchy(measures::CauchyParams(cfg.n, cfg.alpha), count, stream);
    } else if (cfg.measure == "chi") {
        batch = measures::sample_chi(cfg.alpha, count, stream);
    } else if (cfg.measure == "sphere") {
        batch = measures::sample_sphere_uniform(cfg.n, count, stream);
    } else if (cfg.measure == "ball") {
        batch = measures::ball_marginal(cfg.n).sample(count, stream);
    } else {
        throw config_error("sample: unknown measure '" + cfg.measure +
                           "' (gaussian|cauchy|chi|sphere|ball)");
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream os(cfg.csv_path);
        require_config(static_cast<bool>(os), "cannot open " + cfg.csv_path);
        os.precision(17);
        for (int j = 0; j < batch.dim; ++j) os << (j ? "," : "") << "x" << (j + 1);
        os << "\n";
        for (std::size_t i = 0; i < batch.count(); ++i) {
            auto pt = batch.point(i);
            for (int j = 0; j < batch.dim; ++j) os << (j ? "," : "") << pt[j];
            os << "\n";
        }
    }
    double mean_sq = 0;
    for (std::size_t i = 0; i < batch.count(); ++i) mean_sq += squared_norm(batch.point(i));
    mean_sq /= std::max<std::size_t>(1, batch.count());
    out.document = {{"measure", cfg.measure},
                    {"dim", batch.dim},
                    {"count", batch.count()},
                    {"mean_squared_norm", mean_sq}};
    return out;
}

inline RunResult run_cup(const ExperimentConfig& cfg) {
    RunResult out;
    using transform::GridDensity2D;
    transform::QuadratureSpec spec{cfg.quad_nodes, transform::QuadratureSpec::Rule::gauss_legendre};
    const double L = cfg.grid_half_width;
    const int M = cfg.grid_cells;
    const double a = cfg.bump_offset, s = cfg.bump_width;
    // Radial width 0.5 keeps the mass inside [-L/2, L/2]^2 at the default L.
    const GridDensity2D radial = GridDensity2D::tabulate(
        L, M, [](double x, double y) { return std::exp(-2 * (x * x + y * y)); });
    const GridDensity2D offset = GridDensity2D::tabulate(L, M, [a, s](double x, double y) {
        return std::exp(-((x - a) * (x - a) + y * y) / (2 * s * s));
    });
    nlohmann::json checks = nlohmann::json::array();
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto& [name, grid] : {std::pair<const char*, const GridDensity2D*>{"radial", &radial},
                                     {"offset", &offset}}) {
        for (double p : {1.0, 2.0, 3.0, inf}) {
            const auto r = transform::cup_operator_norm_check(*grid, spec, p);
            checks.push_back({{"density", name},
                              {"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)},
                              {"in_norm", r.in_norm},
                              {"out_norm", r.out_norm},
                              {"ratio", r.ratio},
                              {"tol", r.tol},
                              {"contraction_ok", r.contraction_ok},
                              {"isometry_ok", r.isometry_ok}});
        }
    }
    if (!cfg.csv_path.empty())
        transform::cup_density_grid_1d(offset, spec).write_csv(cfg.csv_path);
    out.document = {{"grid", {{"L", L}, {"M", M}, {"N", cfg.quad_nodes}}},
                    {"norm_checks", checks}};
    return out;
}

inline RunResult run_pisier(const ExperimentConfig& cfg, std::size_t count, RngStream stream) {
    RunResult out;
    nlohmann::json arr = nlohmann::json::array();
    std::uint64_t salt = 0;
    for (const auto& f : function_suite(cfg)) {
        for (double p : {1.0, 2.0}) {
            collect(arr,
                    verify::pisier_gaussian_report(f, verify::Power{p}, cfg.n, count,
                                                   substream(stream, salt++)),
                    out.violated);
        }
        const bool exp_ok = !std::holds_alternative<funcs::SmoothNorm>(f.spec()) &&
                            f.lipschitz_bound() < 2 / special::pi;
        if (exp_ok) {
            collect(arr,
                    verify::pisier_gaussian_report(f, verify::Exp{}, cfg.n, count,
                                                   substream(stream, salt++)),
                    out.violated);
            const auto em =
                verify::exp_moment_report(f, cfg.n, count, substream(stream, salt++));
            nlohmann::json j = verify::to_json(em.report);
            j["centered_mean"] = em.centered_mean;
            if (em.report.verdict == verify::Verdict::VIOLATED) out.violated = true;
            arr.push_back(j);
        }
    }
    out.document = {{"reports", arr}};
    return out;
}

inline RunResult run_cauchy_poincare(const ExperimentConfig& cfg, std::size_t count,
                                     RngStream stream) {
    RunResult out;
    nlohmann::json arr = nlohmann::json::array();
    std::uint64_t salt = 0;
    for (const auto& f : function_suite(cfg)) {
        collect(arr,
                verify::cauchy_poincare_report(f, measures::CauchyParams(cfg.n, cfg.alpha),
                                               cfg.p, count, substream(stream, salt++)),
                out.violated);
    }
    out.document = {{"reports", arr}};
    return out;
}

inline RunResult run_sphere(const ExperimentConfig& cfg, std::size_t count, RngStream stream) {
    RunResult out;
    nlohmann::json arr = nlohmann::json::array();
    std::uint64_t salt = 0;
    for (const auto& f : function_suite(cfg)) {
        const auto r = verify::sphere_poincare_report(f, cfg.n, count, substream(stream, salt++));
        collect(arr, r.report, out.violated);
        if (r.lipschitz_line) collect(arr, *r.lipschitz_line, out.violated);
    }
    out.document = {{"reports", arr}};
    return out;
}

inline RunResult run_isoperimetry(const ExperimentConfig& cfg, std::size_t count,
                                  RngStream stream) {
    RunResult out;
    const verify::SetSpec set = verify::SetSpec::parse(cfg.set, cfg.n);
    nlohmann::json arr = nlohmann::json::array();
    const verify::MeasureSpec measure =
        cfg.measure == "gaussian"
            ? verify::MeasureSpec(verify::GaussianMeasure{cfg.n})
            : verify::MeasureSpec(measures::CauchyParams(cfg.n, cfg.beta));
    const auto per =
        verify::perimeter_estimate(measure, set, cfg.eps_list, count, substream(stream, 1));
    nlohmann::json per_json = {{"analytic", per.analytic},
                               {"mc_extrapolated", per.mc_extrapolated},
                               {"eps", per.eps}};
    for (const auto& fd : per.finite_diff) per_json["finite_diff"].push_back(verify::to_json(fd));
    if (cfg.measure == "gaussian") {
        // Cheeger comparison only; equality at half-spaces through the origin.
        const double mass = verify::measure_of(measure, set);
        const double lhs = std::sqrt(2 / special::pi) * std::min(mass, 1 - mass);
        const auto rep = verify::make_report("isoperimetry/gaussian-cheeger/" + set.describe(),
                                             verify::MCEstimate::exact_value(lhs),
                                             verify::MCEstimate::exact_value(per.analytic));
        collect(arr, rep, out.violated);
        out.document = {{"perimeter", per_json}, {"reports", arr}};
        return out;
    }
    const auto bundle =
        verify::isoperimetry_report(cfg.n, cfg.beta, set, count, substream(stream, 2));
    collect(arr, bundle.pair_bound, out.violated);
    collect(arr, bundle.product_bound, out.violated);
    collect(arr, bundle.gaussian_cheeger, out.violated);
    const auto dom = verify::product_domination_check(
        measures::CauchyParams(cfg.n, bundle.alpha), count, substream(stream, 3));
    out.document = {{"perimeter", per_json},
                    {"reports", arr},
                    {"pair_order_alpha", bundle.alpha},
                    {"product_bound_d", bundle.d},
                    {"gaussian_equality", bundle.gaussian_equality},
                    {"domination",
                     {{"d", dom.d},
                      {"observed_min", dom.observed_min},
                      {"probes", dom.probes},
                      {"ok", dom.ok}}}};
    if (!dom.ok) out.violated = true;
    return out;
}

inline RunResult run_tails(const ExperimentConfig& cfg, std::size_t count, RngStream stream) {
    RunResult out;
    nlohmann::json arr = nlohmann::json::array();
    nlohmann::json tail_points = nlohmann::json::array();
    std::vector<double> admissible;
    const double root = std::sqrt(cfg.alpha - cfg.n);
    for (double t : cfg.t_grid)
        if (t >= 0 && t <= root) admissible.push_back(t);
    std::uint64_t salt = 0;
    for (const auto& f : function_suite(cfg)) {
        const auto r = verify::tail_and_moment_report(
            f, measures::CauchyParams(cfg.n, cfg.alpha), cfg.t_grid, count,
            substream(stream, salt++));
        nlohmann::json j{{"function", f.describe()},
                         {"lipschitz_scale", r.lipschitz_scale},
                         {"dropped_t", r.dropped_t},
                         {"dropped_p", r.dropped_p}};
        bool violated = false;
        for (const auto& line : r.pair_tails) collect(j["pair_tails"], line, violated);
        for (const auto& line : r.product_tails) collect(j["product_tails"], line, violated);
        for (const auto& line : r.moments) collect(j["moments"], line, violated);
        out.violated = out.violated || violated;
        arr.push_back(j);
        for (std::size_t i = 0; i < r.pair_tails.size(); ++i) {
            tail_points.push_back({{"function", f.describe()},
                                   {"t", admissible[i]},
                                   {"empirical", r.pair_tails[i].lhs.mean},
                                   {"se", r.pair_tails[i].lhs.std_error},
                                   {"bound", r.pair_tails[i].rhs.mean}});
        }
    }
    if (!cfg.csv_path.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "function,t,empirical,se,bound\n";
        for (const auto& e : tail_points)
            os << e.at("function").get<std::string>() << "," << e.at("t").get<double>() << ","
               << e.at("empirical").get<double>() << "," << e.at("se").get<double>() << ","
               << e.at("bound").get<double>() << "\n";
        write_text_file(cfg.csv_path, os.str());
    }
    out.document = {{"reports", arr}, {"tail_points", tail_points}};
    return out;
}

inline RunResult run_limit_sweep(const ExperimentConfig& cfg) {
    RunResult out;
    const auto rows = verify::gaussian_limit_sweep(cfg.n, cfg.p, cfg.alphas);
    nlohmann::json arr = nlohmann::json::array();
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        arr.push_back({{"alpha", rows[i].alpha},
                       {"rescaled", rows[i].rescaled},
                       {"limit", rows[i].limit},
                       {"relative_gap", rows[i].relative_gap}});
        if (i > 0 && !(rows[i].relative_gap < rows[i - 1].relative_gap)) decreasing = false;
    }
    out.document = {{"rows", arr}, {"gap_strictly_decreasing", decreasing}};
    if (!cfg.csv_path.empty()) {
        std::ostringstream os;
        os.precision(17);
        os << "alpha,rescaled,limit,relative_gap\n";
        for (const auto& r : rows)
            os << r.alpha << "," << r.rescaled << "," << r.limit << "," << r.relative_gap
               << "\n";
        write_text_file(cfg.csv_path, os.str());
    }
    return out;
}

inline void emit_plot(const ExperimentConfig& cfg, const RunResult& result) {
    if (cfg.plot_path.empty()) return;
    if (cfg.experiment == "limit-sweep") {
        const auto& rows = result.document.at("rows");
        if (rows.empty()) {
            std::cerr << "warning: empty sweep, no plot written\n";
            return;
        }
        svg::Chart chart;
        chart.title = "rescaled constant vs alpha";
        chart.x_label = "alpha (log scale)";
        chart.y_label = "rescaled constant";
        chart.log_x = true;
        svg::Series curve;
        curve.label = "rescaled";
        curve.markers = true;
        svg::Series asym;
        asym.color = "#c23b22";
        if (cfg.p == 1.0) {
            asym.label = "c_1 = sqrt(pi/2)";
        } else {
            std::ostringstream os;
            os << "c_p limit, p=" << cfg.p;
            asym.label = os.str();
        }
        for (const auto& r : rows) {
            curve.points.emplace_back(r.at("alpha").get<double>(),
                                      r.at("rescaled").get<double>());
            asym.points.emplace_back(r.at("alpha").get<double>(), r.at("limit").get<double>());
        }
        chart.series = {curve, asym};
        chart.write(cfg.plot_path);
        return;
    }
    if (cfg.experiment == "tails") {
        const auto& pts = result.document.at("tail_points");
        if (pts.empty()) {
            std::cerr << "warning: no tail points, no plot written\n";
            return;
        }
        svg::Chart chart;
        chart.title = "empirical tails vs 2 exp(-t^2/12)";
        chart.x_label = "t";
        chart.y_label = "probability";
        svg::Series emp;
        emp.label = "empirical";
        emp.line = false;
        emp.markers = true;
        double tmin = 1e300, tmax = -1e300;
        for (const auto& e : pts) {
            const double t = e.at("t").get<double>();
            emp.points.emplace_back(t, e.at("empirical").get<double>());
            tmin = std::min(tmin, t);
            tmax = std::max(tmax, t);
        }
        svg::Series bound;
        bound.label = "2 exp(-t^2/12)";
        bound.color = "#c23b22";
        for (int i = 0; i <= 100; ++i) {
            const double t = tmin + (tmax - tmin) * i / 100;
            bound.points.emplace_back(t, 2 * std::exp(-t * t / 12));
        }
        chart.series = {emp, bound};
        chart.write(cfg.plot_path);
        return;
    }
    throw config_error("--plot is only available for limit-sweep and tails");
}

}  // namespace detail

/// Runs one experiment; returns the process exit code.
inline int run(const ExperimentConfig& cfg, std::ostream& log = std::cout) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        bool known = false;
        for (const auto& name : experiment_names()) known = known || name == cfg.experiment;
        require_config(known, "unknown experiment '" + cfg.experiment + "' (see 'list')");
        const std::size_t count = std::max<std::size_t>(1000, cfg.quick ? cfg.samples / 100
                                                                        : cfg.samples);
        const RngStream stream{cfg.seed, 0};

        RunResult result;
        if (cfg.experiment == "constants") {
            result = detail::run_constants(cfg);
        } else if (cfg.experiment == "sample") {
            result = detail::run_sample(cfg, count, stream);
        } else if (cfg.experiment == "cup") {
            result = detail::run_cup(cfg);
        } else if (cfg.experiment == "pisier") {
            result = detail::run_pisier(cfg, count, stream);
        } else if (cfg.experiment == "cauchy-poincare") {
            result = detail::run_cauchy_poincare(cfg, count, stream);
        } else if (cfg.experiment == "sphere") {
            result = detail::run_sphere(cfg, count, stream);
        } else if (cfg.experiment == "isoperimetry") {
            result = detail::run_isoperimetry(cfg, count, stream);
        } else if (cfg.experiment == "tails") {
            result = detail::run_tails(cfg, count, stream);
        } else {
            result = detail::run_limit_sweep(cfg);
        }

        detail::emit_plot(cfg, result);

        nlohmann::json doc;
        doc["experiment"] = cfg.experiment;
        doc["params"] = {{"n", cfg.n},       {"alpha", cfg.alpha}, {"beta", cfg.beta},
                         {"p", cfg.p},       {"samples", count},   {"set", cfg.set},
                         {"measure", cfg.measure}};
        doc["seed"] = cfg.seed;
        doc["results"] = result.document;
        doc["timestamp"] = detail::iso_timestamp();
        doc["runtime_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream hash_os;
        hash_os << std::hex << verify::report_hash(doc);
        doc["content_hash"] = hash_os.str();

        if (!cfg.json_path.empty()) detail::write_text_file(cfg.json_path, doc.dump(2) + "\n");
        log << doc.dump(2) << "\n";
        return result.violated ? 4 : 0;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cup::cli
