#pragma once
// Parameter sets and scenarios shared by the test binaries.

#include <cpf/chi.hpp>
#include <cpf/geodesy.hpp>
#include <cpf/param_design.hpp>
#include <cpf/path.hpp>
#include <cpf/simulator.hpp>

#include <vector>

namespace cpf::testing
{
    inline constexpr double kReferenceA = 0.6303;
    inline constexpr double kReferenceR1 = 122.1297;
    inline constexpr double kCircleL = 1000.0 * kPi / 3.0;

    inline Limits reference_limits () { return Limits{10.0, 25.0, 0.2, 0.002}; }

    /// Published coordination set with v_m = 25, c = 1, alpha = 0.01.
    inline CoordParams reference_params (double L = kCircleL)
    {
        return make_params (reference_limits (), DesignResult{kReferenceA, kReferenceR1, 25.0}, 1.0, 0.01, L);
    }

    inline ChiFunction reference_chi (const CoordParams &p) { return ChiFunction::piecewise (p, 0.475, 0.95); }

    struct Waypoint
    {
        double lon, lat, x, y;
    };

    /// Waypoint table of the parallel-path experiment (deg, deg, m north, m east).
    inline const std::vector<Waypoint> &waypoint_table ()
    {
        static const std::vector<Waypoint> table = {
            {113.2167, 28.2029, 0.0, 0.0},          {113.2371, 28.2209, 2006.43, 1996.54},
            {113.2167, 28.2390, 4013.47, 0.0},      {113.1963, 28.2570, 6019.83, -1997.26},
            {113.2167, 28.2751, 8026.83, 0.0},      {113.2371, 28.2931, 10033.19, 1997.87},
            {113.2167, 28.3112, 12040.19, 0.0},
        };
        return table;
    }

    inline std::vector<Vec2> waypoint_xy ()
    {
        std::vector<Vec2> out;
        const GeoOrigin origin{waypoint_table ().front ().lon, waypoint_table ().front ().lat};
        for (const auto &w : waypoint_table ())
            out.push_back (lonlat_to_local (w.lon, w.lat, origin));
        return out;
    }

    inline Scenario circle_scenario (double duration = 400.0, int threads = 1)
    {
        const CoordParams p = reference_params ();
        Scenario sc;
        sc.name = "circle6";
        sc.params = p;
        sc.chi = reference_chi (p);
        sc.paths = {Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, p.limits.kappa0)};
        const double init[6][3] = {{600, 0, 0.6},       {200, 580, -1.0},  {650, -160, 0.3},
                                   {1100, 0, -0.25},    {-1100, -80, 0.75}, {-200, 1000, -0.25}};
        for (int i = 0; i < 6; ++i)
            sc.uavs.push_back ({i + 1, 0, Pose{init[i][0], init[i][1], init[i][2] * kPi}, 0.0});
        sc.duration = duration;
        sc.dt = 0.01;
        sc.threads = threads;
        return sc;
    }

} // namespace cpf::testing
