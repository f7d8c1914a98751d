#pragma once
/**
 * @file   trace_io.hpp
 * @brief  CSV trace, JSON metrics and long-format plot data writers.
 */

#include <cpf/simulator.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace cpf
{
    /// Column order of the trace CSV.
    [[nodiscard]] const std::vector<std::string> &trace_columns ();

    /// Header plus one line per row; numbers use 12 significant digits so output is byte-stable.
    void write_trace_csv (std::ostream &out, const std::vector<TraceRow> &rows);

    /// Metrics summary as a JSON document (pretty-printed, keys in fixed order).
    void write_metrics_json (std::ostream &out, const Scenario &scenario, const RunResult &result);

    /**
     * @brief Long-format (t, series, value) table of rho, psi, zeta, v, omega, x and y per vehicle.
     * @param stride keep every stride-th time step.
     */
    void write_plot_data (std::ostream &out, const std::vector<TraceRow> &rows, std::size_t stride = 10);

} // namespace cpf
