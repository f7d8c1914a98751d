#include "commands.hpp"

#include <cpf/errors.hpp>
#include <cpf/trace_io.hpp>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

namespace cpf::cli
{
    namespace
    {
        std::filesystem::path output_file (const Config &config, const std::string &name)
        {
            std::filesystem::create_directories (config.output.dir);
            return config.output.dir / name;
        }

        std::ofstream open_output (const std::filesystem::path &path)
        {
            std::ofstream out (path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw Error ("cannot write " + path.string ());
            return out;
        }

        void print_slacks (std::ostream &out, const std::vector<ConstraintSlack> &slacks)
        {
            fmt::print (out, "  {:<34} {:>14}  {}\n", "constraint", "slack", "status");
            for (const auto &s : slacks)
                fmt::print (out, "  {:<34} {:>14.6g}  {}\n", s.name, s.slack, s.satisfied () ? "ok" : "VIOLATED");
        }

        Scenario validated_scenario (const Config &config)
        {
            const CoordParams params = resolve_params (config);
            Scenario scenario = build_scenario (config, params);
            const auto problems = scenario.validate ();
            if (!problems.empty ())
            {
                std::string msg = "scenario '" + scenario.name + "' is invalid:";
                for (const auto &p : problems)
                    msg += "\n  - " + p;
                throw ValidationError (msg);
            }
            return scenario;
        }
    } // namespace

    int cmd_design_params (const Config &config, std::ostream &out)
    {
        const Limits &l = config.limits;
        const CoordParams &given = config.params.params;
        if (!check_feasibility_precondition (l, given.c))
            throw Infeasible (precondition_violation (l, given.c));

        Config designed = config;
        designed.params.designed = true;
        const CoordParams p = resolve_params (designed);

        fmt::print (out, "coordination-set design for v_min={} v_max={} omega_max={} kappa0={} (c={}, alpha={})\n", l.v_min,
                    l.v_max, l.omega_max, l.kappa0, p.c, p.alpha);
        fmt::print (out, "  {:<8} {:>14.8g} rad\n", "a", p.a);
        fmt::print (out, "  {:<8} {:>14.8g} m\n", "R1", p.R1);
        fmt::print (out, "  {:<8} {:>14.8g} m/s\n", "v_m", p.v_m);
        fmt::print (out, "  {:<8} {:>14.8g} m rad\n", "a*R1", p.a * p.R1);
        fmt::print (out, "  {:<8} {:>14.8g} m\n", "R2", p.R2);
        fmt::print (out, "  {:<8} {:>14.8g}\n", "k2", p.k2);
        print_slacks (out, constraint_slacks (p));

        const auto path = output_file (config, config.output.params_fragment);
        open_output (path) << params_fragment (p);
        fmt::print (out, "wrote {}\n", path.string ());
        return all_satisfied (constraint_slacks (p)) ? exit_ok : exit_validation;
    }

    int cmd_simulate (const Config &config, std::ostream &out)
    {
        const Scenario scenario = validated_scenario (config);
        const RunResult result = run_scenario (scenario);

        const auto trace = output_file (config, config.output.trace);
        const auto metrics = output_file (config, config.output.metrics);
        const auto plot = output_file (config, config.output.plot);
        {
            auto f = open_output (trace);
            write_trace_csv (f, result.rows);
        }
        {
            auto f = open_output (metrics);
            write_metrics_json (f, scenario, result);
        }
        {
            auto f = open_output (plot);
            write_plot_data (f, result.rows, config.output.plot_stride);
        }

        const Metrics &m = result.metrics;
        fmt::print (out, "scenario '{}': {} steps, t_final = {} s\n", scenario.name, m.steps, m.final_time);
        if (m.all_in_s1_time)
            fmt::print (out, "  all vehicles in S1 from t = {:.2f} s\n", *m.all_in_s1_time);
        else
            fmt::print (out, "  not all vehicles reached S1\n");
        fmt::print (out, "  overtaking events: {} before, {} after\n", m.events_before_all_in_s1, m.events_after_all_in_s1);
        fmt::print (out, "  {:>4} {:>10} {:>12} {:>12} {:>12} {:>7}\n", "uav", "S1 entry", "rho", "psi", "zeta", "region");
        for (const auto &u : m.uavs)
            fmt::print (out, "  {:>4} {:>10} {:>12.4g} {:>12.4g} {:>12.6g} {:>7}\n", u.id,
                        u.s1_entry_time ? fmt::format ("{:.2f}", *u.s1_entry_time) : "-", u.final_rho, u.final_psi,
                        u.final_zeta, to_string (u.final_region));
        fmt::print (out, "wrote {}, {}, {}\n", trace.string (), metrics.string (), plot.string ());
        return exit_ok;
    }

    int cmd_verify (const Config &config, const std::vector<std::string> &suites, std::ostream &out)
    {
        const CoordParams params = resolve_params (config);
        const ChiFunction chi = resolve_chi (config, params);
        for (const auto &s : constraint_slacks (params))
            if (!s.satisfied ())
                fmt::print (out, "warning: parameter constraint '{}' violated (slack {:.6g})\n", s.name, s.slack);

        const auto results = run_suites (suites, params, chi, config.verify);
        nlohmann::ordered_json report;
        report["seed"] = config.verify.seed;
        report["suites"] = nlohmann::ordered_json::array ();
        bool all_passed = true;
        for (const auto &r : results)
        {
            all_passed = all_passed && r.passed;
            fmt::print (out, "{:<4} {:<20} cases={} failures={} skipped={}\n", r.passed ? "PASS" : "FAIL", r.name, r.cases,
                        r.failures, r.skipped);
            if (!r.detail.empty ())
                fmt::print (out, "     {}\n", r.detail);
            if (r.counterexample)
                fmt::print (out, "     counterexample: {}\n", *r.counterexample);
            nlohmann::ordered_json j;
            j["name"] = r.name;
            j["description"] = r.description;
            j["passed"] = r.passed;
            j["cases"] = r.cases;
            j["failures"] = r.failures;
            j["skipped"] = r.skipped;
            j["counterexample"] = r.counterexample ? nlohmann::ordered_json (*r.counterexample) : nlohmann::ordered_json ();
            j["detail"] = r.detail;
            report["suites"].push_back (j);
        }
        report["passed"] = all_passed;
        const auto path = output_file (config, config.output.verify_report);
        open_output (path) << report.dump (2) << '\n';
        fmt::print (out, "wrote {}\n", path.string ());
        return all_passed ? exit_ok : exit_verification;
    }

    int cmd_demo_escape (const Config &config, std::ostream &out)
    {
        const double eps0 = config.escape_eps0.value_or (config.params.params.eps0);
        const EscapeDemoReport r = escape_demo (config.limits, eps0, config.escape);
        fmt::print (out, "escape-set demonstration (eps0 = {}, path curvature = {} 1/m)\n", eps0, config.escape.path_curvature);
        fmt::print (out, "  states {} x controls {} = {} pairs\n", r.states, r.controls, r.pairs);
        fmt::print (out, "  exits {} ({:.2f} %), slowest exit after {:.2f} s\n", r.exits, 100.0 * r.exit_fraction,
                    r.max_exit_time);
        if (r.first_non_exit)
            fmt::print (out, "  first non-exit: {}\n", *r.first_non_exit);
        return r.exits == r.pairs ? exit_ok : exit_verification;
    }

} // namespace cpf::cli
