#include "cesaro/cli.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/experiments.hpp"

#include <CLI11.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cesaro {

namespace {

struct Options {
    std::vector<int> m_list;
    std::vector<double> alpha_list;
    std::int64_t nmin = 0;
    std::int64_t nmax = 0;
    std::string measure;
    std::string function;
    double tol = 0.0;
    std::string out;
    std::string svg;
    std::string matrix_csv;
    std::uint64_t seed = 0;
    bool no_timestamp = false;
    double z0 = 0.0;
};

std::string describe_defaults(Subcommand sub) {
    const auto cfg = default_config(sub);
    std::string text = "Defaults: --m ";
    for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
        text += (i ? "," : "") + std::to_string(cfg.m_list[i]);
    }
    text += " --alpha ";
    for (std::size_t i = 0; i < cfg.alpha_list.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", cfg.alpha_list[i]);
        text += (i ? "," : "") + std::string(buf);
    }
    char tol[32];
    std::snprintf(tol, sizeof tol, "%g", cfg.tol);
    text += " --nmin " + std::to_string(cfg.n_grid.front()) + " --nmax " + std::to_string(cfg.n_grid.back()) +
            " --measure " + cfg.measure_spec + " --function " + cfg.function_spec + " --tol " + tol + " --seed " +
            std::to_string(cfg.seed) + "\nThresholds:\n";
    for (const auto& note : threshold_notes(sub)) {
        text += "  " + note + "\n";
    }
    return text;
}

void add_options(CLI::App& app, Options& o) {
    app.add_option("--m", o.m_list, "Comma-separated orders m >= 1")->delimiter(',');
    app.add_option("--alpha", o.alpha_list, "Comma-separated Cesaro exponents alpha >= 0")->delimiter(',');
    app.add_option("--nmin", o.nmin, "Smallest n of the power-of-two grid");
    app.add_option("--nmax", o.nmax, "Largest n of the power-of-two grid");
    app.add_option("--measure", o.measure,
                   "Measure: sigma | zero | delta:<deg> | density:[d0,d1re,d1im,...] | mix:<a>+<b> | <w>*<spec>");
    app.add_option("--function", o.function,
                   "Test function: power:s=<s>,N=<N> | monomial:k=<k> | poly:<json> | file:<path> | random:N=<N>");
    app.add_option("--tol", o.tol, "Tolerance (power-iteration residual, or the convergence/oracle threshold)");
    app.add_option("--out", o.out, "CSV output path (stdout when omitted)");
    app.add_option("--svg", o.svg, "SVG plot path (boundedness, divergence, convergence)");
    app.add_option("--matrix-csv", o.matrix_csv, "Dense CSV of the multiplier matrix at the first sweep point");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp metadata line");
    app.add_option("--z0", o.z0, "Real point of the disc for pointwise residuals (convergence)");
}

ExperimentConfig build_config(Subcommand sub, const CLI::App& app, const Options& o) {
    auto cfg = default_config(sub);
    if (app.count("--m")) {
        cfg.m_list = o.m_list;
    }
    if (app.count("--alpha")) {
        cfg.alpha_list = o.alpha_list;
    }
    if (app.count("--nmin") || app.count("--nmax")) {
        const auto lo = app.count("--nmin") ? o.nmin : cfg.n_grid.front();
        const auto hi = app.count("--nmax") ? o.nmax : cfg.n_grid.back();
        cfg.n_grid = power_of_two_grid(lo, hi);
    }
    if (app.count("--measure")) {
        cfg.measure_spec = o.measure;
    }
    if (app.count("--function")) {
        cfg.function_spec = o.function;
    }
    if (app.count("--tol")) {
        cfg.tol = o.tol;
    }
    if (app.count("--out")) {
        cfg.out_csv = o.out;
    }
    if (app.count("--svg")) {
        cfg.out_svg = o.svg;
    }
    if (app.count("--matrix-csv")) {
        cfg.matrix_csv = o.matrix_csv;
    }
    if (app.count("--seed")) {
        cfg.seed = o.seed;
    }
    if (app.count("--z0")) {
        cfg.z0 = o.z0;
    }
    cfg.timestamp = !o.no_timestamp;
    return cfg;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cesaro summability experiments in weighted Dirichlet-type spaces"};
    app.footer("Exit codes: 0 pass, 1 assertion failure, 2 configuration error, 3 numerical non-convergence.\n"
               "Metadata lines prefixed '#' in the CSV echo the configuration, thresholds and check outcomes.");
    app.require_subcommand(1);
    Options options;
    std::map<Subcommand, CLI::App*> subs;
    const std::map<Subcommand, std::string> blurbs = {
        {Subcommand::identities, "Regression suite for the shift, telescoping, binomial and Gamma-ratio identities"},
        {Subcommand::boundedness, "Norms of the Cesaro multiplier matrices for alpha in (1/2, 1)"},
        {Subcommand::divergence, "Norms of the square-root Fejer multiplier matrices against the log lower bound"},
        {Subcommand::convergence, "Seminorm of sigma_n f - f along n for a truncated test function"},
        {Subcommand::seminorm, "All applicable seminorm evaluation paths side by side"},
    };
    for (const auto& [sub, blurb] : blurbs) {
        auto* cmd = app.add_subcommand(std::string(to_string(sub)), blurb);
        cmd->footer(describe_defaults(sub));
        add_options(*cmd, options);
        subs[sub] = cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const auto& [sub, cmd] : subs) {
            if (!cmd->parsed()) {
                continue;
            }
            const auto cfg = build_config(sub, *cmd, options);
            const auto result = run_experiment(cfg);
            std::ostream& report = cfg.out_csv ? out : err;
            if (!cfg.out_csv) {
                out << to_csv(result.table);
            }
            for (const auto& failure : result.failures) {
                report << "FAIL " << failure << "\n";
            }
            const int code = result.exit_code();
            report << to_string(sub) << ": "
                   << (code == 0 ? "PASS" : code == 3 ? "NONCONVERGED" : "FAIL") << " (" << result.table.rows().size()
                   << " rows)\n";
            return code;
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "non-convergence: " << e.what() << " (best estimate " << e.best_estimate() << ")\n";
        return 3;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace cesaro
