#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rhtunnel/errors.hpp"
#include "rhtunnel_app/artifacts.hpp"
#include "rhtunnel_app/config.hpp"

namespace {

using namespace rhtunnel;
using namespace rhtunnel::app;

struct CommonOptions {
    std::string config;
    std::string out;
    bool no_filter = false;
    std::optional<int> workers;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--config", o.config, "configuration file (key = value lines)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("--no-filter", o.no_filter, "disable Lanczos filtering");
    cmd->add_option("--workers", o.workers, "concurrent workers")->check(CLI::PositiveNumber);
}

RunConfig resolve(const CommonOptions& o) {
    RunConfig cfg = o.config.empty() ? parse_config("") : load_config(o.config);
    if (!o.out.empty()) cfg.output = o.out;
    if (o.no_filter) cfg.lanczos = false;
    if (o.workers) cfg.workers = *o.workers;
    validate(cfg);
    return cfg;
}

int report(const std::exception& e, int code) {
    std::cerr << "rhtunnel: " << e.what() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shallow circular tunnel excavation in a gravitational half-plane"};
    app.set_version_flag("--version", software_version());
    app.require_subcommand(1);

    CommonOptions opts;
    auto* run = app.add_subcommand("run", "solve one case and write CSV artifacts and a manifest");
    auto* sweep = app.add_subcommand("sweep", "solve every combination of the sweep lists");
    auto* verify = app.add_subcommand("verify", "print residuals, degeneration identities and the x0/h study");
    auto* plot = app.add_subcommand("plot", "write a gnuplot script for existing artifacts");
    for (auto* cmd : {run, sweep, verify, plot}) add_common(cmd, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kSuccess : kIoFailure;
    }

    try {
        const RunConfig cfg = resolve(opts);
        if (*run) {
            const ArtifactSet set = run_case(cfg);
            for (const auto& w : set.solution.warnings) std::cerr << "warning: " << w << '\n';
            std::cout << "wrote " << cfg.output << " (reps " << set.solution.reps << ")\n";
            return kSuccess;
        }
        if (*sweep) {
            const auto cases = run_sweep(cfg, std::cerr);
            std::size_t failed = 0;
            for (const auto& c : cases) failed += c.ok ? 0 : 1;
            std::cout << "wrote " << cases.size() - failed << " of " << cases.size() << " cases to " << cfg.output
                      << '\n';
            return failed ? kSolverFailure : kSuccess;
        }
        if (*verify) {
            std::ostringstream text;
            const bool ok = run_verification(cfg, text);
            std::cout << text.str();
            if (!opts.out.empty()) {
                ArtifactSet set;
                set.files.emplace_back("verify.txt", text.str());
                write_artifacts(set, cfg.output);
            }
            return ok ? kSuccess : kSolverFailure;
        }
        if (*plot) {
            std::cout << "wrote " << emit_plot_script(cfg.output).string() << '\n';
            return kSuccess;
        }
    } catch (const ConfigError& e) {
        return report(e, kIoFailure);
    } catch (const GeometryError& e) {
        return report(e, kIoFailure);
    } catch (const IoError& e) {
        return report(e, kIoFailure);
    } catch (const std::filesystem::filesystem_error& e) {
        return report(e, kIoFailure);
    } catch (const std::exception& e) {
        return report(e, kSolverFailure);
    }
    return kSuccess;
}
