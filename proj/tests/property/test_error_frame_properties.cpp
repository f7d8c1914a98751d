#include "fixtures.hpp"
#include "generators.hpp"

#include <cpf/error_frame.hpp>
#include <cpf/simulator.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace cpf;
using namespace cpf::testing;

TEST (ErrorFrameProperty, ClassificationMatchesSetMembership)
{
    Gen gen (101);
    const CoordParams p = reference_params ();
    for (int i = 0; i < 200000; ++i)
    {
        const PathError e = gen.in_box (p);
        const Region r = classify (e, p);
        EXPECT_EQ (in_s1 (r), in_coordination_set (e.rho, e.psi, p));
        EXPECT_NE (r, Region::OutsideS);
        EXPECT_EQ (in_s1 (classify ({-e.rho, -e.psi, 0.0, 0.0}, p)), in_s1 (r)); // the set is centrally symmetric
    }
}

TEST (ErrorFrameProperty, OutsideBoxIsOutsideS)
{
    Gen gen (102);
    const CoordParams p = reference_params ();
    for (int i = 0; i < 10000; ++i)
    {
        const double rho = (gen.coin () ? 1.0 : -1.0) * gen.uniform (p.R2 * (1.0 + 1e-12) + 1e-9, 2.0 * p.R2);
        EXPECT_EQ (classify ({rho, gen.angle (), 0.0, 0.0}, p), Region::OutsideS);
    }
}

TEST (ErrorFrameProperty, PoseFromErrorRoundTrip)
{
    Gen gen (103);
    const std::vector<Path> paths = {Path::circle (Vec2 (50.0, 20.0), 900.0, Direction::clockwise, 0.002),
                                     Path::bspline (waypoint_xy (), 0.002)};
    for (const Path &path : paths)
        for (int i = 0; i < 2000; ++i)
        {
            const double s = gen.uniform (0.0, path.total_length ());
            const double rho = gen.uniform (-400.0, 400.0);
            const double psi = gen.angle ();
            const PathError e = compute_error (pose_from_error (path, s, rho, psi), path, s);
            EXPECT_NEAR (e.rho, rho, 1e-6);
            EXPECT_NEAR (std::remainder (e.psi - psi, 2.0 * kPi), 0.0, 1e-9);
        }
}

TEST (ErrorFrameProperty, DynamicsMatchFiniteDifferenceOfKinematics)
{
    // On a circle the curvature is constant, so the error rates follow from moving the pose.
    Gen gen (104);
    const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
    const double h = 1e-4;
    for (int i = 0; i < 2000; ++i)
    {
        const double rho = gen.uniform (-450.0, 450.0);
        const double psi = gen.uniform (-1.4, 1.4);
        const double v = gen.uniform (10.0, 25.0);
        const double w = gen.uniform (-0.2, 0.2);
        const Pose q = pose_from_error (c, gen.uniform (0.0, c.total_length ()), rho, psi);
        const PathError e0 = compute_error (q, c);
        const PathError e1 = compute_error (integrate_rk4 (q, v, w, h), c, e0.s_proj);
        const ErrorRates f = error_dynamics (e0, v, w);
        EXPECT_NEAR ((e1.rho - e0.rho) / h, f.rho_dot, 5e-3);
        EXPECT_NEAR (std::remainder (e1.psi - e0.psi, 2.0 * kPi) / h, f.psi_dot, 5e-4);
    }
}
