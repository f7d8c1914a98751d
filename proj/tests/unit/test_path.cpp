#include "fixtures.hpp"
#include "generators.hpp"

#include <cpf/bspline.hpp>
#include <cpf/errors.hpp>
#include <cpf/path.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace cpf;
using namespace cpf::testing;

namespace
{
    /// Closest sample over a dense arc-length grid, then a fine local pass.
    double brute_force_distance (const Path &path, const Vec2 &q, double s_lo, double s_hi, int samples)
    {
        double best = std::numeric_limits<double>::infinity ();
        double best_s = s_lo;
        const double step = (s_hi - s_lo) / samples;
        for (int i = 0; i <= samples; ++i)
        {
            const double s = s_lo + step * i;
            const double d = (path.point_at (s) - q).norm ();
            if (d < best)
            {
                best = d;
                best_s = s;
            }
        }
        for (int i = -1000; i <= 1000; ++i)
            best = std::min (best, (path.point_at (best_s + step * i / 1000.0) - q).norm ());
        return best;
    }

    /// +1 when q lies left of the tangent at s.
    double side (const Path &path, double s, const Vec2 &q)
    {
        return cross (path.tangent_at (s), q - path.point_at (s)) >= 0.0 ? 1.0 : -1.0;
    }

    const Path &hil_spline ()
    {
        static const Path path = Path::bspline (waypoint_xy (), 0.002);
        return path;
    }
} // namespace

TEST (Circle, ArcLengthAnchors)
{
    const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
    EXPECT_NEAR ((c.point_at (0.0) - Vec2 (1000.0, 0.0)).norm (), 0.0, 1e-9);
    EXPECT_NEAR ((c.point_at (500.0 * kPi) - Vec2 (0.0, 1000.0)).norm (), 0.0, 1e-9);
    EXPECT_NEAR ((c.point_at (1000.0 * kPi) - Vec2 (-1000.0, 0.0)).norm (), 0.0, 1e-9);
    EXPECT_NEAR (c.total_length (), 2000.0 * kPi, 1e-9);
    EXPECT_TRUE (c.closed ());
}

TEST (Circle, CurvatureSignFollowsDirection)
{
    const Path ccw = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
    const Path cw = Path::circle (Vec2::Zero (), 1000.0, Direction::clockwise, 0.002);
    for (double s : {0.0, 123.0, 4000.0, 6000.0})
    {
        EXPECT_DOUBLE_EQ (ccw.curvature_at (s), 0.001);
        EXPECT_DOUBLE_EQ (cw.curvature_at (s), -0.001);
    }
    EXPECT_NEAR (ccw.tangent_angle_at (0.0), kPi / 2.0, 1e-12);
}

TEST (Circle, ProjectionExamples)
{
    const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
    const Projection inside = c.project (Vec2 (600.0, 0.0));
    EXPECT_NEAR (inside.s, 0.0, 1e-9);
    EXPECT_NEAR (inside.rho, 400.0, 1e-9); // interior of a CCW circle is on the left
    EXPECT_NEAR (c.project (Vec2 (1000.0, 0.0)).rho, 0.0, 1e-9);
    EXPECT_NEAR (c.project (Vec2 (1100.0, 0.0)).rho, -100.0, 1e-9);
    EXPECT_THROW ((void)c.project (Vec2::Zero ()), ProjectionAmbiguous);
}

TEST (Circle, CurvatureAboveBoundRejected)
{
    EXPECT_THROW ((void)Path::circle (Vec2::Zero (), 400.0, Direction::counterclockwise, 0.002), CurvatureBoundExceeded);
    EXPECT_THROW ((void)Path::circle (Vec2::Zero (), -1.0, Direction::counterclockwise, 0.002), ValidationError);
}

TEST (Line, ProjectionSign)
{
    const Path l = Path::line (Vec2::Zero (), 0.0, 1e4, 0.002);
    const Projection p = l.project (Vec2 (3.0, -2.0));
    EXPECT_NEAR (p.s, 3.0, 1e-12);
    EXPECT_NEAR (p.rho, -2.0, 1e-12);
    EXPECT_DOUBLE_EQ (l.curvature_at (50.0), 0.0);
    EXPECT_FALSE (l.closed ());
}

TEST (ArcDistance, ClosedWrapAround)
{
    const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
    const double C = c.total_length ();
    EXPECT_NEAR (c.arc_distance (0.0, 1000.0 * kPi / 3.0), 1047.1975511965977, 1e-9);
    EXPECT_DOUBLE_EQ (c.arc_distance (17.0, 17.0), 0.0);
    EXPECT_NEAR (c.arc_distance (C - 1.0, 1.0), 2.0, 1e-9);
    EXPECT_NEAR (c.signed_arc_difference (1.0, C - 1.0), -2.0, 1e-9);
    EXPECT_NEAR (c.wrap_s (C + 5.0), 5.0, 1e-9);
    EXPECT_NEAR (c.wrap_s (-5.0), C - 5.0, 1e-9);
}

TEST (Projection, CircleMatchesBruteForce)
{
    Gen gen (11);
    const Path c = Path::circle (Vec2 (30.0, -20.0), 800.0, Direction::clockwise, 0.002);
    for (int i = 0; i < 50; ++i)
    {
        const double s = gen.uniform (0.0, c.total_length ());
        const double rho = gen.uniform (-450.0, 450.0);
        const Vec2 q = c.point_at (s) + rho * Vec2 (-std::sin (c.tangent_angle_at (s)), std::cos (c.tangent_angle_at (s)));
        const Projection p = c.project (q);
        const double oracle = brute_force_distance (c, q, 0.0, c.total_length (), 1000000);
        EXPECT_NEAR (std::abs (p.rho), oracle, 1e-6);
        EXPECT_EQ (p.rho >= 0.0 ? 1.0 : -1.0, side (c, p.s, q));
    }
}

TEST (Projection, SplineMatchesBruteForce)
{
    Gen gen (12);
    const Path &path = hil_spline ();
    for (int i = 0; i < 30; ++i)
    {
        const double s = gen.uniform (0.0, path.total_length ());
        const double rho = gen.uniform (-300.0, 300.0);
        const double th = path.tangent_angle_at (s);
        const Vec2 q = path.point_at (s) + rho * Vec2 (-std::sin (th), std::cos (th));
        const Projection p = path.project (q);
        const double oracle = brute_force_distance (path, q, -500.0, path.total_length () + 500.0, 400000);
        EXPECT_NEAR (std::abs (p.rho), oracle, 1e-6) << "s=" << s << " rho=" << rho;
        EXPECT_NEAR (std::abs (p.rho), std::abs (rho), 1e-6);
        EXPECT_EQ (p.rho >= 0.0 ? 1.0 : -1.0, side (path, p.s, q));
    }
}

TEST (Projection, HintedAgreesWithGlobal)
{
    Gen gen (13);
    const Path &path = hil_spline ();
    for (int i = 0; i < 50; ++i)
    {
        const double s = gen.uniform (100.0, path.total_length () - 100.0);
        const double th = path.tangent_angle_at (s);
        const Vec2 q = path.point_at (s) + gen.uniform (-50.0, 50.0) * Vec2 (-std::sin (th), std::cos (th));
        const Projection global = path.project (q);
        const Projection hinted = path.project (q, s + gen.uniform (-3.0, 3.0));
        EXPECT_NEAR (global.s, hinted.s, 1e-6);
        EXPECT_NEAR (global.rho, hinted.rho, 1e-9);
    }
}

TEST (Spline, WaypointTableConversion)
{
    const auto xy = waypoint_xy ();
    const auto &table = waypoint_table ();
    for (std::size_t i = 0; i < table.size (); ++i)
    {
        EXPECT_NEAR (xy[i].x (), table[i].x, 6.0) << "waypoint " << i + 1;
        EXPECT_NEAR (xy[i].y (), table[i].y, 6.0) << "waypoint " << i + 1;
    }
}

TEST (Spline, StartsAtFirstWaypointAndInterpolates)
{
    const Path &path = hil_spline ();
    EXPECT_NEAR (path.point_at (0.0).norm (), 0.0, 1e-9);
    const auto xy = waypoint_xy ();
    for (const auto &w : xy)
        EXPECT_NEAR (path.project (w).rho, 0.0, 1e-6);
    EXPECT_NEAR ((path.point_at (path.total_length ()) - xy.back ()).norm (), 0.0, 1e-6);
}

TEST (Spline, CurvatureBelowBoundOnDenseGrid)
{
    const Path &path = hil_spline ();
    EXPECT_LT (path.max_abs_curvature (0.1), 0.002);
    EXPECT_GT (path.max_abs_curvature (0.1), 0.0);
}

TEST (Spline, RejectsTightOrDegenerateWaypoints)
{
    const std::vector<Vec2> tight = {{0, 0}, {100, 100}, {200, 0}, {300, 100}, {400, 0}};
    EXPECT_THROW ((void)Path::bspline (tight, 0.002), CurvatureBoundExceeded);
    const std::vector<Vec2> few = {{0, 0}, {1000, 0}, {2000, 0}};
    EXPECT_THROW ((void)Path::bspline (few, 0.002), ValidationError);
    const std::vector<Vec2> repeated = {{0, 0}, {1000, 0}, {1000, 0}, {2000, 0}, {3000, 0}};
    EXPECT_THROW ((void)Path::bspline (repeated, 0.002), DegenerateSpline);
}

TEST (Spline, RoundTripProjection)
{
    const Path &path = hil_spline ();
    for (double s = 0.0; s <= path.total_length (); s += 7.3)
        EXPECT_NEAR (path.project (path.point_at (s)).s, s, 1e-6);
}

TEST (Spline, ArcLengthTableAgreesWithQuadrature)
{
    const auto curve = CubicBSpline::interpolate (waypoint_xy ());
    const ArcLengthTable table (curve, 0.1);
    EXPECT_NEAR (table.length (), arc_length (curve, 0.0, 1.0), 1e-6);
    for (double s : {0.0, 1000.0, 8888.8, table.length ()})
        EXPECT_NEAR (table.s_at (table.u_at (s)), s, 1e-6);
    // polyline of 2e5 chords underestimates the length by O(h^2)
    double chord = 0.0;
    Vec2 prev = curve.point (0.0);
    for (int i = 1; i <= 200000; ++i)
    {
        const Vec2 next = curve.point (i / 200000.0);
        chord += (next - prev).norm ();
        prev = next;
    }
    EXPECT_NEAR (table.length (), chord, 1e-3);
}

TEST (Path, TranslatedKeepsParameterization)
{
    const Path &base = hil_spline ();
    const Path moved = base.translated (Vec2 (0.0, 100.0));
    EXPECT_DOUBLE_EQ (moved.total_length (), base.total_length ());
    for (double s : {0.0, 2500.0, 9000.0})
    {
        EXPECT_NEAR ((moved.point_at (s) - base.point_at (s) - Vec2 (0.0, 100.0)).norm (), 0.0, 1e-9);
        EXPECT_DOUBLE_EQ (moved.curvature_at (s), base.curvature_at (s));
    }
}

TEST (Path, OpenPathsExtrapolateAlongEndTangents)
{
    const Path &path = hil_spline ();
    const double th0 = path.tangent_angle_at (0.0);
    const Vec2 behind = path.point_at (0.0) - 50.0 * Vec2 (std::cos (th0), std::sin (th0));
    const Projection p = path.project (behind);
    EXPECT_NEAR (p.s, -50.0, 1e-6);
    EXPECT_NEAR (p.rho, 0.0, 1e-6);
}
