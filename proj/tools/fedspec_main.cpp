// fedspec: run federated / distributed spectrum-access training and write
// per-episode reward CSVs.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime or I/O error.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fedspec/config.hpp"
#include "fedspec/error.hpp"
#include "fedspec/experiment.hpp"
#include "fedspec/metrics_csv.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct RunOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> episodes;
    std::optional<int> participants;
    std::string out = "metrics.csv";
};

struct SweepOptions {
    std::string config_path;
    std::vector<int> participants;
    std::vector<std::uint64_t> seeds;
    std::optional<int> episodes;
    std::string out_dir = ".";
    int jobs = 1;
};

fedspec::ScenarioConfig base_config(const std::string& path) {
    return path.empty() ? fedspec::parse_config("{}") : fedspec::load_config(path);
}

void run_to_csv(const fedspec::ScenarioConfig& config, fedspec::CsvWriter& writer) {
    fedspec::run_experiment(config, [&writer](const fedspec::MetricsRecord& r) { writer.write(r); });
}

int do_run(const RunOptions& opts) {
    fedspec::ScenarioConfig config = base_config(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.mode) config.mode = fedspec::parse_mode(*opts.mode);
    if (opts.episodes) config.episodes = *opts.episodes;
    if (opts.participants) config.participants_u = *opts.participants;
    fedspec::validate(config);

    fedspec::CsvWriter writer(opts.out);
    run_to_csv(config, writer);
    writer.close();
    std::cerr << "wrote " << opts.out << "\n";
    return 0;
}

// One CSV per participation level, named u<k>.csv; multiple seeds are
// concatenated in the same file and told apart by the seed column.
int do_sweep(const SweepOptions& opts) {
    fedspec::ScenarioConfig base = base_config(opts.config_path);
    if (opts.episodes) base.episodes = *opts.episodes;
    base.mode = fedspec::Mode::fl;
    const std::vector<std::uint64_t> seeds = opts.seeds.empty() ? std::vector<std::uint64_t>{base.seed} : opts.seeds;

    std::vector<fedspec::ScenarioConfig> configs;
    for (const int u : opts.participants) {
        fedspec::ScenarioConfig c = base;
        c.participants_u = u;
        fedspec::validate(c);
        configs.push_back(c);
    }

    std::filesystem::create_directories(opts.out_dir);
    const auto run_level = [&seeds, &opts](fedspec::ScenarioConfig c) {
        const auto path = std::filesystem::path(opts.out_dir) / ("u" + std::to_string(c.participants_u) + ".csv");
        fedspec::CsvWriter writer(path);
        for (const std::uint64_t s : seeds) {
            c.seed = s;
            run_to_csv(c, writer);
        }
        writer.close();
        return path;
    };

    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opts.jobs));
    for (std::size_t start = 0; start < configs.size(); start += jobs) {
        std::vector<std::future<std::filesystem::path>> batch;
        for (std::size_t k = start; k < std::min(configs.size(), start + jobs); ++k) {
            batch.push_back(std::async(std::launch::async, run_level, configs[k]));
        }
        for (auto& f : batch) std::cerr << "wrote " << f.get().string() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Federated multi-agent spectrum access simulator"};
    app.require_subcommand(1);

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "Train one FL or DL run and write its metrics CSV");
    run->add_option("--config", run_opts.config_path, "Flat JSON scenario config")->check(CLI::ExistingFile);
    run->add_option("--seed", run_opts.seed, "Master seed");
    run->add_option("--mode", run_opts.mode, "fl or dl")->check(CLI::IsMember({"fl", "dl"}));
    run->add_option("--out", run_opts.out, "Output CSV path");
    run->add_option("--episodes", run_opts.episodes, "Number of episodes");
    run->add_option("--participants", run_opts.participants, "Agents per aggregation round (U)");

    SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "FL participation sweep, one CSV per U value");
    sweep->add_option("--config", sweep_opts.config_path, "Flat JSON scenario config")->check(CLI::ExistingFile);
    sweep->add_option("--participants", sweep_opts.participants, "Comma-separated U values")
        ->delimiter(',')
        ->required();
    sweep->add_option("--seeds", sweep_opts.seeds, "Comma-separated seeds (default: config seed)")->delimiter(',');
    sweep->add_option("--episodes", sweep_opts.episodes, "Number of episodes");
    sweep->add_option("--out-dir", sweep_opts.out_dir, "Output directory")->required();
    sweep->add_option("--jobs", sweep_opts.jobs, "Runs executed concurrently")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return do_run(run_opts);
        return do_sweep(sweep_opts);
    } catch (const fedspec::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
