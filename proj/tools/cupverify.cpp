// cupverify: numerical verification of Poincare-type, isoperimetric and
// concentration inequalities for Gaussian, Cauchy and spherical measures,
// built around the quarter-turn rotation average of pair measures.
//
// Usage:
//   cupverify list
//   cupverify <experiment> [--n N] [--alpha A] [--beta B] [--p P]
//             [--samples COUNT] [--seed SEED] [--set halfspace:C|ball:R]
//             [--func SPEC]... [--alphas LIST] [--t-grid LIST] [--eps LIST]
//             [--measure NAME] [--out FILE.json] [--csv FILE.csv]
//             [--plot FILE.svg] [--quick] [--config FILE.ini]
//
// Exit codes: 0 ok, 2 config error, 3 domain error, 4 VIOLATED verdict.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cup/cli.hpp"

namespace {

std::vector<double> parse_list_or_die(const std::string& text) {
    return cup::cli::detail::parse_numbers(text);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification suite for concentration and Poincare-type "
                 "inequalities of rotationally invariant measures"};
    app.set_config("--config", "", "read options from an INI-style config file");
    app.require_subcommand(0, 1);

    cup::cli::ExperimentConfig cfg;
    std::string alphas_text, t_grid_text, eps_text;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", cfg.n, "dimension of the function space R^n");
        cmd->add_option("--alpha", cfg.alpha, "Cauchy order (or chi degrees of freedom)");
        cmd->add_option("--beta", cfg.beta, "Cauchy order of the perimeter measure");
        cmd->add_option("--p", cfg.p, "moment exponent");
        cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count");
        cmd->add_option("--seed", cfg.seed, "random seed (reports are reproducible by seed)");
        cmd->add_option("--set", cfg.set, "test set: halfspace:<offset> or ball:<radius>");
        cmd->add_option("--measure", cfg.measure,
                        "measure under test (gaussian|cauchy|chi|sphere|ball)");
        cmd->add_option("--func", cfg.functions,
                        "test function spec (linear[:coords] | smoothnorm:<eps> | "
                        "rbf[:w,s,c..;w,s,c..] | halfspace:<offset>,<softness>); repeatable");
        cmd->add_option("--alphas", alphas_text, "comma list of alpha values for limit-sweep");
        cmd->add_option("--t-grid", t_grid_text, "comma list of tail thresholds t");
        cmd->add_option("--eps", eps_text, "comma list of decreasing epsilons for perimeters");
        cmd->add_option("--grid-l", cfg.grid_half_width, "grid half-width L");
        cmd->add_option("--grid-m", cfg.grid_cells, "grid cells per axis M");
        cmd->add_option("--grid-n", cfg.quad_nodes, "quadrature nodes N for the t-average");
        cmd->add_option("--bump-offset", cfg.bump_offset, "offset of the test bump");
        cmd->add_option("--bump-width", cfg.bump_width, "width of the test bump");
        cmd->add_option("--out", cfg.json_path, "write the JSON report here");
        cmd->add_option("--csv", cfg.csv_path, "write CSV output here");
        cmd->add_option("--plot", cfg.plot_path, "write an SVG plot here");
        cmd->add_flag("--quick", cfg.quick, "divide sample counts by 100 for smoke runs");
    };

    CLI::App* list_cmd = app.add_subcommand("list", "print experiments and parameter windows");
    for (const auto& name : cup::cli::experiment_names())
        add_common(app.add_subcommand(name, "run the '" + name + "' experiment"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (list_cmd->parsed()) {
        std::cout << cup::cli::list_experiments();
        return 0;
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
        std::cout << app.help() << "\n" << cup::cli::list_experiments();
        return 0;
    }
    cfg.experiment = subs.front()->get_name();
    try {
        if (!alphas_text.empty()) cfg.alphas = parse_list_or_die(alphas_text);
        if (!t_grid_text.empty()) cfg.t_grid = parse_list_or_die(t_grid_text);
        if (!eps_text.empty()) cfg.eps_list = parse_list_or_die(eps_text);
    } catch (const cup::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return cup::cli::run(cfg);
}
