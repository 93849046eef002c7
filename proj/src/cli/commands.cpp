#include <iostream>

#include "CLI11.hpp"

#include "hyperseq/cli.hpp"
#include "hyperseq/errors.hpp"

namespace hyperseq::cli {
namespace {

struct FlagValues {
    std::string config;
    std::vector<std::pair<std::string, std::string>> settings;
};

bool wants_csv(const RunConfig& config) {
    if (!config.out) return false;
    const auto ext = std::filesystem::path(*config.out).extension().string();
    return ext == ".csv" || ext == ".CSV";
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.out) {
        write_atomic(*config.out, content);
        out << "wrote " << *config.out << '\n';
    } else {
        out << content;
    }
}

int run_command(const std::string& cmd, const RunConfig& config, std::ostream& out) {
    const SequenceSpec spec = config.spec();
    if (cmd == "gen") {
        const long n = config.require_n();
        const RatPoly pn = gen_poly(spec, n);
        emit(config, wants_csv(config) ? gen_csv(pn) : gen_json(spec, n, pn), out);
    } else if (cmd == "zeros") {
        const long n = config.require_n();
        emit(config, zeros_csv(n, sequence_zeros(spec, n, config.tau_real)), out);
    } else if (cmd == "scan") {
        ScanOptions opts;
        opts.tau_real = config.tau_real;
        emit(config, scan_json(spec, config.n_max, first_nonhyperbolic(spec, config.n_max, opts)), out);
    } else if (cmd == "curve") {
        emit(config, curve_csv(trace_curve(spec, config.grid, config.tol)), out);
    } else if (cmd == "endpoints") {
        emit(config, endpoints_csv(endpoint_locus(spec)), out);
    } else if (cmd == "verify") {
        const auto checks = verify_spec(config);
        const std::string table = verify_table(checks);
        out << table;
        if (config.out) write_atomic(*config.out, table);
        return verify_exit_status(checks);
    } else if (cmd == "figure") {
        const long n = config.require_n();
        const auto segments = trace_curve(spec, config.grid, config.tol);
        const auto zeros = sequence_zeros(spec, n, config.tau_real);
        emit(config, figure_svg(config, segments, zeros, endpoint_locus(spec)), out);
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial sequences P_n + B P_{n-1} + A P_{n-k} = 0: zeros, limiting curve, figures", "hyperseq"};
    app.fallthrough();
    app.require_subcommand(1);

    FlagValues flags;
    app.add_option("--config", flags.config, "key = value configuration file");
    const std::vector<std::pair<std::string, std::string>> setting_flags = {
        {"--k", "recurrence order, k >= 3"},
        {"--A", "coefficients of A, ascending, e.g. [7,-5,-1,1]"},
        {"--B", "coefficients of B, ascending"},
        {"--n", "sequence index"},
        {"--n-max", "scan limit (default 200)"},
        {"--grid", "XMIN,XMAX,YMIN,YMAX,NX,NY"},
        {"--tol", "curve tolerance (default 1e-9)"},
        {"--tau-real", "relative realness tolerance (default 1e-8)"},
        {"--out", "output path; stdout when absent"},
        {"--form", "paper-literal | recurrence-standard"},
    };
    std::vector<std::string> values(setting_flags.size());
    std::vector<CLI::Option*> options;
    for (std::size_t i = 0; i < setting_flags.size(); ++i)
        options.push_back(app.add_option(setting_flags[i].first, values[i], setting_flags[i].second));

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"gen", "exact coefficients of P_n (JSON, or CSV when --out ends in .csv)"},
        {"zeros", "zeros of P_n with curve diagnostics (CSV)"},
        {"scan", "first non-hyperbolic P_n up to n-max (JSON)"},
        {"curve", "traced curve Im(B^k/A) = 0 as polylines (CSV)"},
        {"endpoints", "endpoints of the curve (CSV)"},
        {"verify", "invariant checks, nonzero exit on failure"},
        {"figure", "curve, zeros and endpoints as SVG"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    RunConfig config;
    try {
        if (!flags.config.empty()) config = load_config(flags.config);
        for (std::size_t i = 0; i < setting_flags.size(); ++i) {
            if (options[i]->count() > 0) apply_setting(config, setting_flags[i].first.substr(2), values[i]);
        }
        return run_command(cmd, config, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hyperseq");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hyperseq::cli
