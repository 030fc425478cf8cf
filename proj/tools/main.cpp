// cgo-lab: runs the verification pipelines and writes CSVs, plot scripts and a
// JSON verdict per subcommand.
//
// Exit codes: 0 all checks passed, 1 some check failed, 2 configuration error,
// 3 any other error.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "cgo/error.hpp"
#include "config.hpp"
#include "pipelines.hpp"
#include "report.hpp"

namespace {

using cgo::cli::Config;
using cgo::cli::Report;

enum Exit { ok = 0, check_failed = 1, config_failed = 2, runtime_failed = 3 };

void print(const Report& r) {
    for (const auto& c : r.checks) {
        if (c.relation == "info") {
            std::cout << "  info  " << c.name << " = " << c.value;
        } else {
            std::cout << (c.pass ? "  PASS  " : "  FAIL  ") << c.name;
            if (c.relation != "bool") std::cout << " = " << c.value << ' ' << c.relation << ' ' << c.threshold;
        }
        if (!c.note.empty()) std::cout << "  (" << c.note << ')';
        std::cout << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CGO reconstruction verification pipelines"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path, out_dir;
    long seed = -1, jobs = 0;
    app.add_option("--config", config_path, "Config file (keys override the built-in defaults)");
    app.add_option("--out", out_dir, "Output directory (default: config key out)");
    app.add_option("--seed", seed, "RNG seed (default: config key seed)");
    app.add_option("--jobs", jobs, "Worker threads (default: CGO_JOBS, then config key jobs)")
        ->check(CLI::PositiveNumber);
    bool print_config = false;
    app.add_flag("--print-config", print_config, "Print the effective config and exit");

    using Pipeline = Report (*)(const Config&);
    const std::vector<std::tuple<std::string, std::string, Pipeline>> commands = {
        {"appendix-checks", "Closed-form norm identities and tau scalings", cgo::cli::run_appendix_checks},
        {"cauchy-checks", "Cauchy transform identities and boundedness", cgo::cli::run_cauchy_checks},
        {"decay", "Decay of T, S and phi in tau", cgo::cli::run_decay},
        {"cgo", "CGO series convergence, residuals and alpha fit", cgo::cli::run_cgo},
        {"reconstruct", "Stationary phase, term decay, reconstruction and DN map", cgo::cli::run_reconstruct},
    };
    for (const auto& [name, help, fn] : commands) app.add_subcommand(name, help);
    app.add_subcommand("all", "Every pipeline in turn");

    CLI11_PARSE(app, argc, argv);
    const std::string chosen = app.get_subcommands().front()->get_name();

    Config config;
    try {
        config = config_path.empty() ? Config::defaults() : Config::load(config_path);
        if (seed >= 0) config.set("seed", std::to_string(seed));
        if (jobs > 0) {
            config.set("jobs", std::to_string(jobs));
        } else if (const char* env = std::getenv("CGO_JOBS")) {
            config.set("jobs", env);
        }
        if (!out_dir.empty()) config.set("out", out_dir);
        if (config.get_int("jobs") < 1) throw cgo::Error(cgo::ErrorCode::config_error, "jobs must be positive");
    } catch (const cgo::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_failed;
    }
    if (print_config) {
        std::cout << config.serialize();
        return ok;
    }

    int status = ok;
    Report combined;
    combined.command = "all";
    for (const auto& [name, help, fn] : commands) {
        if (chosen != "all" && chosen != name) continue;
        std::cout << name << '\n';
        Report r;
        r.command = name;
        try {
            r = fn(config);
        } catch (const cgo::Error& e) {
            r.error = e.what();
            std::cerr << name << ": " << r.error << '\n';
            status = std::max(status, e.code() == cgo::ErrorCode::config_error ? int(config_failed) : int(runtime_failed));
        } catch (const std::exception& e) {
            r.error = e.what();
            std::cerr << name << ": " << r.error << '\n';
            status = std::max(status, int(runtime_failed));
        }
        print(r);
        try {
            cgo::cli::write_report(config.get_string("out"), r, config);
        } catch (const std::exception& e) {
            std::cerr << "cannot write results: " << e.what() << '\n';
            status = std::max(status, int(runtime_failed));
        }
        if (r.error.empty() && !r.passed()) status = std::max(status, int(check_failed));
        std::cout << (r.error.empty() && r.passed() ? "  verdict: pass\n" : "  verdict: fail\n");
        r.files.clear();
        combined.merge(std::move(r));
    }
    if (chosen == "all") {
        try {
            cgo::cli::write_report(config.get_string("out"), combined, config);
        } catch (const std::exception& e) {
            std::cerr << "cannot write results: " << e.what() << '\n';
            status = std::max(status, int(runtime_failed));
        }
    }
    return status;
}
