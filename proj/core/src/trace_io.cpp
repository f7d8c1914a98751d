#include <cpf/trace_io.hpp>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <iterator>

namespace cpf
{
    namespace
    {
        std::string num (double x) { return fmt::format ("{:.12g}", x); }

        nlohmann::ordered_json optional_number (const std::optional<double> &x)
        {
            return x ? nlohmann::ordered_json (*x) : nlohmann::ordered_json (nullptr);
        }
    } // namespace

    const std::vector<std::string> &trace_columns ()
    {
        static const std::vector<std::string> columns = {"t",     "uav_id", "x",     "y",    "theta",        "rho",
                                                         "psi",   "s_proj", "kappa", "region", "v",          "omega",
                                                         "zeta",  "pre_neighbor", "reset", "events"};
        return columns;
    }

    void write_trace_csv (std::ostream &out, const std::vector<TraceRow> &rows)
    {
        const auto &cols = trace_columns ();
        for (std::size_t i = 0; i < cols.size (); ++i)
            out << (i ? "," : "") << cols[i];
        out << '\n';

        fmt::memory_buffer buf;
        for (const auto &r : rows)
        {
            buf.clear ();
            fmt::format_to (std::back_inserter (buf), "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", num (r.t), r.uav_id,
                            num (r.pose.x), num (r.pose.y), num (r.pose.theta), num (r.error.rho), num (r.error.psi),
                            num (r.error.s_proj), num (r.error.kappa_p), to_string (r.command.region), num (r.command.v),
                            num (r.command.omega), num (r.zeta), r.pre_neighbor ? std::to_string (*r.pre_neighbor) : "",
                            r.command.reset_applied ? 1 : 0, r.events);
            out.write (buf.data (), static_cast<std::streamsize> (buf.size ()));
        }
    }

    void write_metrics_json (std::ostream &out, const Scenario &scenario, const RunResult &result)
    {
        const Metrics &m = result.metrics;
        nlohmann::ordered_json doc;
        doc["scenario"] = scenario.name;
        doc["duration"] = scenario.duration;
        doc["dt"] = scenario.dt;
        doc["steps"] = m.steps;
        doc["final_time"] = m.final_time;
        doc["L"] = scenario.params.L;
        doc["all_in_s1_time"] = optional_number (m.all_in_s1_time);
        doc["events_before_all_in_s1"] = m.events_before_all_in_s1;
        doc["events_after_all_in_s1"] = m.events_after_all_in_s1;

        auto uavs = nlohmann::ordered_json::array ();
        for (const auto &u : m.uavs)
        {
            nlohmann::ordered_json j;
            j["id"] = u.id;
            j["s1_entry_time"] = optional_number (u.s1_entry_time);
            j["final_region"] = std::string (to_string (u.final_region));
            j["final_rho"] = u.final_rho;
            j["final_psi"] = u.final_psi;
            j["final_zeta"] = u.final_zeta;
            j["final_zeta_error"] = u.final_zeta_error;
            j["tail_abs_rho_max"] = u.tail_abs_rho_max;
            j["tail_abs_psi_max"] = u.tail_abs_psi_max;
            j["tail_zeta_peak_to_peak"] = u.tail_zeta_peak_to_peak;
            j["resets"] = u.resets;
            uavs.push_back (std::move (j));
        }
        doc["uavs"] = std::move (uavs);

        auto events = nlohmann::ordered_json::array ();
        for (const auto &e : result.events)
        {
            nlohmann::ordered_json j;
            j["t"] = e.t;
            j["uav_id"] = e.event.uav_id;
            j["kind"] = std::string (to_string (e.event.kind));
            j["previous"] = e.event.previous ? nlohmann::ordered_json (*e.event.previous) : nlohmann::ordered_json (nullptr);
            j["current"] = e.event.current ? nlohmann::ordered_json (*e.event.current) : nlohmann::ordered_json (nullptr);
            events.push_back (std::move (j));
        }
        doc["events"] = std::move (events);
        out << doc.dump (2) << '\n';
    }

    void write_plot_data (std::ostream &out, const std::vector<TraceRow> &rows, std::size_t stride)
    {
        if (stride == 0)
            stride = 1;
        out << "t,series,value\n";
        std::size_t step = 0;
        double current_t = rows.empty () ? 0.0 : rows.front ().t;
        for (const auto &r : rows)
        {
            if (r.t != current_t)
            {
                current_t = r.t;
                ++step;
            }
            if (step % stride != 0)
                continue;
            const std::string id = std::to_string (r.uav_id);
            const std::string t = num (r.t);
            out << t << ",rho_" << id << ',' << num (r.error.rho) << '\n'
                << t << ",psi_" << id << ',' << num (r.error.psi) << '\n'
                << t << ",zeta_" << id << ',' << num (r.zeta) << '\n'
                << t << ",v_" << id << ',' << num (r.command.v) << '\n'
                << t << ",omega_" << id << ',' << num (r.command.omega) << '\n'
                << t << ",x_" << id << ',' << num (r.pose.x) << '\n'
                << t << ",y_" << id << ',' << num (r.pose.y) << '\n';
        }
    }

} // namespace cpf
