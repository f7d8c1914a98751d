#include <cpf/error_frame.hpp>
#include <cpf/errors.hpp>
#include <cpf/escape_demo.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace cpf
{
    namespace
    {
        struct PairOutcome
        {
            bool exited = false;
            double time = 0.0;
        };

        PairOutcome integrate (double rho, double psi, double kappa, double v, double omega, double r0,
                               const EscapeDemoOptions &o)
        {
            const auto rates = [&] (double r, double s, double &dr, double &ds) {
                const PathError e{r, s, 0.0, kappa};
                const ErrorRates f = error_dynamics (e, v, omega);
                dr = f.rho_dot;
                ds = f.psi_dot;
            };
            if (rho > r0)
                return {true, 0.0};
            const double h = o.dt;
            const auto steps = static_cast<long> (std::ceil (o.horizon / h));
            for (long k = 1; k <= steps; ++k)
            {
                double a1, b1, a2, b2, a3, b3, a4, b4;
                rates (rho, psi, a1, b1);
                rates (rho + 0.5 * h * a1, psi + 0.5 * h * b1, a2, b2);
                rates (rho + 0.5 * h * a2, psi + 0.5 * h * b2, a3, b3);
                rates (rho + h * a3, psi + h * b3, a4, b4);
                rho += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
                psi += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
                if (std::abs (rho) > r0)
                    return {true, static_cast<double> (k) * h};
            }
            return {false, o.horizon};
        }
    } // namespace

    EscapeDemoReport escape_demo (const Limits &limits, double eps0, const EscapeDemoOptions &o)
    {
        if (!(o.path_curvature <= 0.0 && o.path_curvature > -limits.kappa0))
            throw ValidationError ("escape demo needs a path curvature in (-kappa0, 0]");
        if (o.heading_samples < 1 || o.lateral_samples < 1 || o.control_grid < 2)
            throw ValidationError ("escape demo grids must be non-empty");
        if (!(eps0 > 0.0 && eps0 < 0.5 * kPi))
            throw ValidationError ("eps0 must lie in (0, pi/2)");

        const double r0 = 1.0 / limits.kappa0;
        std::vector<PathError> states;
        for (int j = 1; j <= o.heading_samples; ++j)
        {
            const double psi = eps0 + (0.5 * kPi - eps0) * j / o.heading_samples;
            const double width = limits.v_min * (psi - eps0) * std::sin (eps0) / limits.omega_max;
            for (int i = 0; i < o.lateral_samples; ++i)
            {
                const PathError e{r0 - width * i / o.lateral_samples, psi, 0.0, o.path_curvature};
                if (in_escape_set (e, limits, eps0))
                    states.push_back (e);
            }
        }

        std::vector<std::pair<double, double>> controls;
        for (int i = 0; i < o.control_grid; ++i)
            for (int j = 0; j < o.control_grid; ++j)
                controls.emplace_back (limits.v_min + (limits.v_max - limits.v_min) * i / (o.control_grid - 1),
                                       -limits.omega_max + 2.0 * limits.omega_max * j / (o.control_grid - 1));

        EscapeDemoReport report;
        report.states = states.size ();
        report.controls = controls.size ();
        report.pairs = states.size () * controls.size ();

        std::vector<PairOutcome> outcomes (report.pairs);
        const auto n = static_cast<long> (report.pairs);
        const int threads = o.threads > 0 ? o.threads : omp_get_max_threads ();
#pragma omp parallel for schedule(dynamic, 64) num_threads(threads)
        for (long idx = 0; idx < n; ++idx)
        {
            const auto k = static_cast<std::size_t> (idx);
            const PathError &e = states[k / controls.size ()];
            const auto &[v, omega] = controls[k % controls.size ()];
            outcomes[k] = integrate (e.rho, e.psi, e.kappa_p, v, omega, r0, o);
        }

        for (std::size_t k = 0; k < outcomes.size (); ++k)
        {
            if (outcomes[k].exited)
            {
                ++report.exits;
                report.max_exit_time = std::max (report.max_exit_time, outcomes[k].time);
            }
            else if (!report.first_non_exit)
            {
                const PathError &e = states[k / controls.size ()];
                const auto &[v, omega] = controls[k % controls.size ()];
                std::ostringstream msg;
                msg << "rho=" << e.rho << " psi=" << e.psi << " v=" << v << " omega=" << omega;
                report.first_non_exit = msg.str ();
            }
        }
        report.exit_fraction = report.pairs ? static_cast<double> (report.exits) / static_cast<double> (report.pairs) : 0.0;
        return report;
    }

} // namespace cpf
