#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "levycond/config.hpp"
#include "levycond/experiments.hpp"
#include "levycond/report_io.hpp"
#include "levycond/stable.hpp"
#include "levycond/transforms.hpp"

namespace {

using namespace levycond;

std::string read_file(const std::string& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << stream.rdbuf();
    return buf.str();
}

int write_reports(const std::vector<ExperimentReport>& reports, const RunConfig& config,
                  const std::string& name) {
    const std::string base = config.out_dir + "/" + name;
    write_file(base + ".csv", to_csv(reports));
    write_file(base + ".summary.json", to_summary_json(reports));
    write_file(base + ".log", to_log_text(reports));
    bool pass = true;
    for (const auto& report : reports) {
        pass = pass && report.pass;
        std::printf("%-40s %s  (%.1f s)\n", report.id.c_str(),
                    report.pass ? "pass" : "FAIL", report.wall_seconds);
    }
    std::printf("wrote %s.{csv,summary.json,log}\n", base.c_str());
    return pass ? 0 : 1;
}

std::vector<ExperimentReport> filter_kind(std::vector<ExperimentReport> reports,
                                          const std::string& kind) {
    if (kind == "both") return reports;
    const std::string suffix = "." + kind;
    std::vector<ExperimentReport> kept;
    for (auto& report : reports) {
        if (report.id.size() >= suffix.size() &&
            report.id.compare(report.id.size() - suffix.size(), suffix.size(), suffix) == 0)
            kept.push_back(std::move(report));
    }
    return kept.empty() ? reports : kept;
}

int run_target(const RunConfig& config) {
    ExperimentOptions opts;
    opts.master_seed = config.seed;
    opts.chunks = config.chunks;
    opts.quick = config.quick;
    opts.n_override = config.n;

    if (config.experiment == "simulate") {
        const StableParams params = config.symmetric
                                        ? StableParams::make_symmetric(config.alpha)
                                        : StableParams::make(config.alpha, config.rho);
        const GridSpec grid = GridSpec::from_dt(config.t_max, config.dt);
        const SamplePath path =
            simulate_path(params, grid, config.x0, RngStream{config.seed, 0});
        std::string csv = "t,value\n";
        char buf[64];
        for (std::size_t k = 0; k < path.values.size(); ++k) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n",
                          static_cast<double>(k) * grid.dt(), path.values[k]);
            csv += buf;
        }
        write_file(config.out_dir + "/path.csv", csv);
        std::printf("wrote %s/path.csv (%zu points)\n", config.out_dir.c_str(),
                    path.values.size());
        return 0;
    }
    if (config.experiment == "resolvent") {
        const std::vector<ExperimentReport> reports = {resolvent_checks()};
        return write_reports(reports, config, "resolvent");
    }
    const auto reports = filter_kind(run_experiment(config.experiment, opts), config.kind);
    return write_reports(reports, config, config.experiment);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation and verification toolkit for stable processes conditioned "
                 "to stay positive or to avoid the origin"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    unsigned chunks = 0;
    bool quick = false;
    bool have_seed = false, have_chunks = false;
    app.add_option("--config", config_path, "configuration file (key = value sections)");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--seed", seed, "master seed (overrides config)")->each([&](const std::string&) {
        have_seed = true;
    });
    app.add_option("--chunks", chunks, "path chunks per estimator (overrides config)")
        ->each([&](const std::string&) { have_chunks = true; });
    app.add_flag("--quick", quick, "reduced budgets for CI smoke runs");

    const std::vector<std::pair<std::string, std::string>> verify_commands = {
        {"verify-martingale", "martingale"},
        {"verify-conditioning-limit", "conditioning-limit"},
        {"verify-meander-limit", "meander-limit"},
        {"verify-feller", "feller-entrance"},
        {"verify-longtime", "long-time"},
        {"verify-brownian", "brownian-checks"},
    };
    std::string target;
    for (const auto& [command, experiment] : verify_commands) {
        auto* sub = app.add_subcommand(command, "run the " + experiment + " experiment");
        sub->fallthrough();
        sub->callback([&target, id = experiment]() { target = id; });
    }
    auto* simulate = app.add_subcommand("simulate", "write one sample path as CSV");
    simulate->fallthrough();
    simulate->callback([&target]() { target = "simulate"; });
    auto* resolvent = app.add_subcommand("resolvent",
                                         "resolvent density checks and C_times extraction");
    resolvent->fallthrough();
    resolvent->callback([&target]() { target = "resolvent"; });
    auto* list = app.add_subcommand("list-experiments", "print the experiment ids");
    list->fallthrough();
    list->callback([&target]() { target = "list-experiments"; });

    CLI11_PARSE(app, argc, argv);

    if (target == "list-experiments") {
        for (const auto& id : levycond::experiment_ids()) std::printf("%s\n", id.c_str());
        return 0;
    }

    levycond::RunConfig config;
    if (!config_path.empty()) {
        try {
            const auto parsed = levycond::parse_config(read_file(config_path));
            if (!parsed.ok()) {
                for (const auto& err : parsed.errors)
                    std::fprintf(stderr, "config error: %s\n", err.c_str());
                return 2;
            }
            config = *parsed.config;
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\n", e.what());
            return 2;
        }
    }
    config.experiment = target;
    if (have_seed) config.seed = seed;
    if (have_chunks) config.chunks = chunks;
    if (quick) config.quick = true;
    if (!out_dir.empty()) config.out_dir = out_dir;

    try {
        return run_target(config);
    } catch (const levycond::EssTooLowError& e) {
        std::fprintf(stderr, "estimator error in %s: %s\n", target.c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error in %s: %s\n", target.c_str(), e.what());
        return 2;
    }
}
