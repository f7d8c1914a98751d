#pragma once

#include "config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace cpf::cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_validation = 1,
        exit_runtime = 2,
        exit_verification = 3,
    };

    /// Designs (a, R1, v_m), prints the slack table and writes the params fragment.
    int cmd_design_params (const Config &config, std::ostream &out);

    /// Runs the scenario and writes trace, metrics and plot data.
    int cmd_simulate (const Config &config, std::ostream &out);

    /// Runs the property suites (all when `suites` is empty) and writes a JSON report.
    int cmd_verify (const Config &config, const std::vector<std::string> &suites, std::ostream &out);

    /// Brute-force escape-set demonstration.
    int cmd_demo_escape (const Config &config, std::ostream &out);

} // namespace cpf::cli
