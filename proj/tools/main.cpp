#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sampop/config.hpp"
#include "sampop/errors.hpp"
#include "sampop/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sampling-operator experiment runner"};
    app.footer(sampop::list_suites_text());
    app.require_subcommand(0, 1);

    std::string config_path, out_dir, ladder_arg;
    std::uint64_t seed = 0;
    int jobs = 1;

    CLI::App* run = app.add_subcommand("run", "execute a suite from a JSON config");
    run->add_option("config", config_path, "path to the JSON config")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--seed", seed, "seed override");
    run->add_option("--ladder", ladder_arg, "ladder override: \"8:256\" or \"8,12,16,24\"");
    run->add_option("--jobs", jobs, "concurrent zoo-member evaluations");

    CLI::App* list = app.add_subcommand("list-suites", "describe the available suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // bad usage is a configuration problem
    }

    if (list->parsed()) {
        std::cout << sampop::list_suites_text();
        return 0;
    }
    if (!run->parsed()) {
        std::cout << app.help();
        return 0;
    }

    try {
        sampop::ExperimentConfig cfg = sampop::load_config(config_path);
        if (run->count("--out")) cfg.out_dir = out_dir;
        if (run->count("--seed")) cfg.seed = seed;
        if (run->count("--ladder")) cfg.ladder = sampop::parse_ladder_arg(ladder_arg);
        if (run->count("--jobs")) cfg.jobs = jobs;
        sampop::validate_config(cfg);

        const sampop::RunOutcome outcome = sampop::run_experiment(cfg);
        std::cout << outcome.summary;
        for (const auto& path : outcome.artifacts) std::cout << "wrote " << path << '\n';
        return outcome.all_pass ? 0 : 1;
    } catch (const sampop::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const sampop::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
