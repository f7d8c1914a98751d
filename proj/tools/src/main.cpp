// cpf: coordinated path following for speed-constrained fixed-wing UAVs.
//
//   cpf design-params --config limits.cfg [--out DIR]
//   cpf simulate      --config scenario.cfg [--out DIR] [--dt S] [--duration S] [--threads N]
//   cpf verify        --config scenario.cfg [--suite NAME]... [--seed N] [--threads N]
//   cpf demo-escape   --config limits.cfg [--threads N]
//
// Every flag can also be set through CPF_<FLAG> (CPF_CONFIG, CPF_OUT, CPF_DT,
// CPF_DURATION, CPF_SEED, CPF_SUITE, CPF_THREADS); the command line wins.
// Exit codes: 0 ok, 1 validation error, 2 runtime abort, 3 verification failure.

#include "commands.hpp"

#include <cpf/errors.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>

int main (int argc, char **argv)
{
    using namespace cpf::cli;

    CLI::App app{"Coordinated path following for speed-constrained fixed-wing UAVs", "cpf"};
    app.require_subcommand (1);

    std::string config_path;
    Overrides overrides;
    std::string out_dir;
    double dt = 0.0;
    double duration = 0.0;
    std::uint64_t seed = 0;
    int threads = 0;
    std::vector<std::string> suites;

    auto *design = app.add_subcommand ("design-params", "maximize a*R1 and print the constraint slacks");
    auto *simulate = app.add_subcommand ("simulate", "run a scenario and write trace, metrics and plot data");
    auto *verify = app.add_subcommand ("verify", "run the randomized property suites");
    auto *escape = app.add_subcommand ("demo-escape", "brute-force escape-set demonstration");

    for (auto *sub : {design, simulate, verify, escape})
    {
        sub->add_option ("--config", config_path, "scenario config file (YAML)")->required ()->envname ("CPF_CONFIG");
        sub->add_option ("--out", out_dir, "output directory")->envname ("CPF_OUT");
        sub->add_option ("--threads", threads, "worker threads")->check (CLI::PositiveNumber)->envname ("CPF_THREADS");
    }
    for (auto *sub : {simulate, verify, escape})
        sub->add_option ("--dt", dt, "integration step (s)")->check (CLI::PositiveNumber)->envname ("CPF_DT");
    simulate->add_option ("--duration", duration, "simulated time (s)")->check (CLI::NonNegativeNumber)->envname ("CPF_DURATION");
    verify->add_option ("--seed", seed, "random seed")->envname ("CPF_SEED");
    verify->add_option ("--suite", suites, "suite name or alias, repeatable")->delimiter (',')->envname ("CPF_SUITE");

    try
    {
        app.parse (argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit (e);
        return code == 0 ? exit_ok : exit_validation;
    }

    const auto given = [] (CLI::App *sub, const char *name) { return sub->count (name) > 0; };
    CLI::App *active = app.get_subcommands ().front ();
    if (given (active, "--out"))
        overrides.out = out_dir;
    if (given (active, "--threads"))
        overrides.threads = threads;
    if (active != design && given (active, "--dt"))
        overrides.dt = dt;
    if (active == simulate && given (active, "--duration"))
        overrides.duration = duration;
    if (active == verify && given (active, "--seed"))
        overrides.seed = seed;

    try
    {
        Config config = load_config (config_path);
        apply_overrides (config, overrides);
        if (active == design)
            return cmd_design_params (config, std::cout);
        if (active == simulate)
            return cmd_simulate (config, std::cout);
        if (active == verify)
            return cmd_verify (config, suites, std::cout);
        return cmd_demo_escape (config, std::cout);
    }
    catch (const cpf::ValidationError &e)
    {
        fmt::print (stderr, "error: {}\n", e.what ());
        return exit_validation;
    }
    catch (const std::exception &e)
    {
        fmt::print (stderr, "aborted: {}\n", e.what ());
        return exit_runtime;
    }
}
