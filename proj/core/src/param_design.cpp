#include <cpf/errors.hpp>
#include <cpf/param_design.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

namespace cpf
{
    namespace
    {
        bool better (const DesignResult &x, const DesignResult &y)
        {
            const double fx = x.objective ();
            const double fy = y.objective ();
            if (fx != fy)
                return fx > fy;
            return std::tie (x.a, x.R1, x.v_m) < std::tie (y.a, y.R1, y.v_m);
        }

        // Pulls v_m down by ulps until rounding no longer breaks an upper-bound inequality.
        double settle_vm (const Limits &limits, double a, double R1, double v_m, double c, double alpha)
        {
            for (int i = 0; i < 64; ++i)
            {
                if (all_satisfied (design_slacks (limits, a, R1, v_m, c, alpha)))
                    return v_m;
                v_m = std::nextafter (v_m, 0.0);
            }
            return -1.0;
        }

        /// Largest feasible a for this R1 (feasible a values form an interval starting at 0), or a negative value.
        DesignResult widest_for_radius (const Limits &limits, double R1, double c, double alpha, int steps)
        {
            const auto feasible = [&] (double a) { return max_feasible_vm (limits, a, R1, c, alpha) > 0.0; };
            double lo = 1e-9;
            if (!(R1 > 0.0 && R1 < 1.0 / limits.kappa0) || !feasible (lo))
                return DesignResult{};
            double hi = 0.5 * kPi;
            for (int i = 0; i < steps && hi - lo > 0.0; ++i)
            {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi)
                    break;
                (feasible (mid) ? lo : hi) = mid;
            }
            return DesignResult{lo, R1, max_feasible_vm (limits, lo, R1, c, alpha)};
        }

        DesignResult search_radii (const Limits &limits, double c, double alpha, double r_lo, double r_hi, int n,
                                   int steps, DesignResult incumbent)
        {
            std::vector<DesignResult> found (static_cast<std::size_t> (n + 1), DesignResult{});
#pragma omp parallel for schedule(static)
            for (int j = 0; j <= n; ++j)
                found[static_cast<std::size_t> (j)] = widest_for_radius (limits, r_lo + (r_hi - r_lo) * j / n, c, alpha, steps);
            for (const auto &cand : found)
                if (cand.v_m > 0.0 && (incumbent.v_m <= 0.0 || better (cand, incumbent)))
                    incumbent = cand;
            return incumbent;
        }
    } // namespace

    std::vector<ConstraintSlack> design_slacks (const Limits &limits, double a, double R1, double v_m, double c,
                                                double alpha)
    {
        const double k0 = limits.kappa0;
        const double r0 = 1.0 / k0;
        std::vector<ConstraintSlack> out;
        out.push_back ({"0 < a", a, true});
        out.push_back ({"a < pi/2", 0.5 * kPi - a, true});
        out.push_back ({"0 < R1", R1, true});
        out.push_back ({"R1 < R0", r0 - R1, true});
        out.push_back ({"v_min < v_m", v_m - limits.v_min, true});
        out.push_back ({"v_m <= v_max", limits.v_max - v_m, false});
        out.push_back ({"turn rate at set corner", limits.omega_max / v_m - (std::sqrt ((a / R1) * (a / R1) + k0 * k0) + alpha / v_m),
                        false});
        out.push_back ({"turn rate at set edge", limits.omega_max / v_m - (k0 / (1.0 - k0 * R1) + alpha / v_m), false});
        out.push_back ({"along-path speed margin",
                        std::cos (a) * v_m / (1.0 + k0 * R1) - (limits.v_min / (1.0 - k0 * R1) + c), false});
        out.push_back ({"alpha > 0", alpha, true});
        out.push_back ({"c > 0", c, true});
        return out;
    }

    std::vector<ConstraintSlack> constraint_slacks (const CoordParams &p)
    {
        auto out = design_slacks (p.limits, p.a, p.R1, p.v_m, p.c, p.alpha);
        const Limits &l = p.limits;
        out.push_back ({"k1 > 0", p.k1, true});
        out.push_back ({"k2 >= 1", p.k2 - 1.0, false});
        out.push_back ({"k3 >= 1", p.k3 - 1.0, false});
        out.push_back ({"a <= R1 k1", p.R1 * p.k1 - p.a, false});
        out.push_back ({"R1 k1 < a k2", p.a * p.k2 - p.R1 * p.k1, true});
        out.push_back ({"R1 < R2", p.R2 - p.R1, true});
        out.push_back ({"R2 < R0 - v_min/omega_max", 1.0 / l.kappa0 - l.v_min / l.omega_max - p.R2, true});
        out.push_back ({"0 < eps0 < a", std::min (p.eps0, p.a - p.eps0), true});
        out.push_back ({"sign_epsilon >= 0", p.sign_epsilon, false});
        return out;
    }

    bool all_satisfied (const std::vector<ConstraintSlack> &slacks)
    {
        return std::all_of (slacks.begin (), slacks.end (), [] (const ConstraintSlack &s) { return s.satisfied (); });
    }

    bool check_feasibility_precondition (const Limits &limits, double c) { return precondition_violation (limits, c).empty (); }

    std::string precondition_violation (const Limits &limits, double c)
    {
        std::ostringstream msg;
        if (!(limits.v_min > 0.0 && limits.v_max > limits.v_min && limits.omega_max > 0.0 && limits.kappa0 > 0.0))
            msg << "limits must satisfy 0 < v_min < v_max, omega_max > 0, kappa0 > 0";
        else if (limits.kappa0 > limits.omega_max / limits.v_max)
            msg << "curvature bound exceeds omega_max/v_max (kappa0 = " << limits.kappa0
                << " > " << limits.omega_max / limits.v_max << ")";
        else if (limits.v_min + c > limits.v_max)
            msg << "v_min + c exceeds v_max (" << limits.v_min + c << " > " << limits.v_max << ")";
        return msg.str ();
    }

    double max_feasible_vm (const Limits &limits, double a, double R1, double c, double alpha)
    {
        const double k0 = limits.kappa0;
        if (!(a > 0.0 && a < 0.5 * kPi && R1 > 0.0 && k0 * R1 < 1.0))
            return -1.0;
        const double margin = limits.omega_max - alpha;
        if (!(margin > 0.0))
            return -1.0;
        const double upper = std::min ({limits.v_max, margin / std::sqrt ((a / R1) * (a / R1) + k0 * k0),
                                        margin * (1.0 - k0 * R1) / k0});
        const double lower = (limits.v_min / (1.0 - k0 * R1) + c) * (1.0 + k0 * R1) / std::cos (a);
        if (upper < lower || !(upper > limits.v_min))
            return -1.0;
        return settle_vm (limits, a, R1, upper, c, alpha);
    }

    DesignResult design_coordination_set (const Limits &limits, double c, double alpha, const DesignOptions &options)
    {
        if (const std::string why = precondition_violation (limits, c); !why.empty ())
            throw Infeasible (why);

        const int saved_threads = omp_get_max_threads ();
        if (options.threads > 0)
            omp_set_num_threads (options.threads);

        const double r0 = 1.0 / limits.kappa0;
        DesignResult best = search_radii (limits, c, alpha, 0.0, r0, options.grid_r, options.bisection_steps, DesignResult{});
        if (best.v_m <= 0.0)
        {
            omp_set_num_threads (saved_threads);
            throw Infeasible ("no radius admits a heading width satisfying the turn-rate and speed-margin inequalities");
        }

        double dr = r0 / options.grid_r;
        for (int level = 0; level < options.zoom_levels; ++level)
        {
            const double lo = std::max (0.0, best.R1 - 2.0 * dr);
            const double hi = std::min (r0, best.R1 + 2.0 * dr);
            best = search_radii (limits, c, alpha, lo, hi, options.zoom_grid, options.bisection_steps, best);
            dr = (hi - lo) / options.zoom_grid;
        }

        if (options.threads > 0)
            omp_set_num_threads (saved_threads);
        return best;
    }

    double default_R2 (const Limits &limits) { return 0.9 * (1.0 / limits.kappa0 - limits.v_min / limits.omega_max); }

    CoordParams make_params (const Limits &limits, const DesignResult &design, double c, double alpha, double L)
    {
        CoordParams p;
        p.limits = limits;
        p.a = design.a;
        p.R1 = design.R1;
        p.v_m = design.v_m;
        p.R2 = default_R2 (limits);
        p.alpha = alpha;
        p.c = c;
        p.k1 = 1.0;
        p.k2 = design.R1 / design.a + 1.0;
        p.k3 = 1.0;
        p.L = L;
        return p;
    }

    double coordination_rate_bound (const CoordParams &p)
    {
        return (1.0 - p.lambda) * (p.leader_speed_floor () - p.min_along_path_speed ());
    }

} // namespace cpf
