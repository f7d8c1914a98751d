#include "fixtures.hpp"
#include "generators.hpp"

#include <cpf/error_frame.hpp>
#include <cpf/errors.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace cpf;
using namespace cpf::testing;

namespace
{
    const Path &circle1000 ()
    {
        static const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
        return c;
    }
} // namespace

TEST (ComputeError, OnPathAligned)
{
    const PathError e = compute_error (Pose{1000.0, 0.0, kPi / 2.0}, circle1000 ());
    EXPECT_NEAR (e.rho, 0.0, 1e-9);
    EXPECT_NEAR (e.psi, 0.0, 1e-12);
    EXPECT_DOUBLE_EQ (e.kappa_p, 0.001);
}

TEST (ComputeError, InitialStatesOfCircleRun)
{
    const PathError e1 = compute_error (Pose{600.0, 0.0, 0.6 * kPi}, circle1000 ());
    EXPECT_NEAR (e1.rho, 400.0, 1e-9);
    EXPECT_NEAR (e1.psi, 0.1 * kPi, 1e-12);
    const PathError e4 = compute_error (Pose{1100.0, 0.0, -0.25 * kPi}, circle1000 ());
    EXPECT_NEAR (e4.rho, -100.0, 1e-9);
    EXPECT_NEAR (e4.psi, -0.75 * kPi, 1e-12);
}

TEST (ComputeError, InitialRegionsOfCircleRun)
{
    const CoordParams p = reference_params ();
    const Scenario sc = circle_scenario ();
    const std::array<Region, 6> expected = {Region::S2_1, Region::S2_1, Region::S2_4,
                                            Region::S2_3, Region::S2_3, Region::S2_1};
    for (std::size_t i = 0; i < 6; ++i)
        EXPECT_EQ (classify (compute_error (sc.uavs[i].initial, circle1000 ()), p), expected[i]) << "UAV " << i + 1;
}

TEST (ComputeError, HeadingErrorIsWrapped)
{
    Gen gen (3);
    for (int i = 0; i < 1000; ++i)
    {
        const PathError e = compute_error (Pose{gen.uniform (-900, 900), gen.uniform (-900, 900), gen.uniform (-20, 20)},
                                           Path::line (Vec2::Zero (), 0.3, 1e4, 0.002));
        EXPECT_GE (e.psi, -kPi);
        EXPECT_LT (e.psi, kPi);
    }
}

TEST (ErrorDynamics, Examples)
{
    ErrorRates r = error_dynamics ({0.0, 0.0, 0.0, 0.001}, 16.082, 0.016082);
    EXPECT_NEAR (r.rho_dot, 0.0, 1e-15);
    EXPECT_NEAR (r.psi_dot, 0.0, 1e-15);
    r = error_dynamics ({0.0, kPi / 2.0, 0.0, 0.0}, 10.0, 0.0);
    EXPECT_NEAR (r.rho_dot, 10.0, 1e-12);
    EXPECT_NEAR (r.psi_dot, 0.0, 1e-15);
    r = error_dynamics ({100.0, 0.0, 0.0, 0.001}, 10.0, 0.0);
    EXPECT_NEAR (r.rho_dot, 0.0, 1e-15);
    EXPECT_NEAR (r.psi_dot, -0.01 / 0.9, 1e-15);
}

TEST (ErrorDynamics, SingularDenominator)
{
    EXPECT_THROW ((void)error_dynamics ({1000.0, 0.0, 0.0, 0.001}, 10.0, 0.0), SingularDenominator);
    EXPECT_THROW ((void)error_dynamics ({1500.0, 0.0, 0.0, 0.001}, 10.0, 0.0), SingularDenominator);
}

TEST (Classify, Examples)
{
    const CoordParams p = reference_params ();
    EXPECT_EQ (classify ({0.0, 0.0, 0.0, 0.0}, p), Region::S1_2);
    EXPECT_EQ (classify ({p.R1 + 1.0, -p.a / 2.0, 0.0, 0.0}, p), Region::S2_4);
    EXPECT_EQ (classify ({-p.R2, kPi - 0.01, 0.0, 0.0}, p), Region::S2_1);
    EXPECT_EQ (classify ({-p.R1 - 1.0, p.a / 2.0, 0.0, 0.0}, p), Region::S2_2);
    EXPECT_EQ (classify ({0.0, -kPi + 0.01, 0.0, 0.0}, p), Region::S2_3);
    EXPECT_EQ (classify ({p.R2 + 1.0, 0.0, 0.0, 0.0}, p), Region::OutsideS);
}

TEST (Classify, SubsetsFollowThetaSign)
{
    Gen gen (21);
    const CoordParams p = reference_params ();
    for (int i = 0; i < 100000; ++i)
    {
        const PathError e = gen.in_s1 (p);
        const Region r = classify (e, p);
        ASSERT_TRUE (in_s1 (r));
        const double th = theta_manifold (e.rho, e.psi, p);
        if (r == Region::S1_1 || r == Region::S1_2 || r == Region::S1_6)
            EXPECT_GE (th, 0.0) << to_string (r);
        else
            EXPECT_LE (th, 0.0) << to_string (r);
    }
}

TEST (Classify, TotalAndAreaConsistent)
{
    // The ten in-S tags partition the box; S1's hexagon has area 3 a R1.
    Gen gen (22);
    const CoordParams p = reference_params ();
    const int n = 1000000;
    int s1 = 0;
    for (int i = 0; i < n; ++i)
    {
        const Region r = classify (gen.in_box (p), p);
        ASSERT_NE (r, Region::OutsideS);
        s1 += in_s1 (r) ? 1 : 0;
    }
    const double box = 2.0 * p.R2 * 2.0 * kPi;
    const double expected = 3.0 * p.a * p.R1 / box;
    EXPECT_NEAR (static_cast<double> (s1) / n, expected, 0.001 + 4.0 * std::sqrt (expected / n));
}

TEST (Classify, RegionNamesRoundTrip)
{
    for (int i = 0; i <= static_cast<int> (Region::OutsideS); ++i)
    {
        const auto r = static_cast<Region> (i);
        EXPECT_EQ (region_from_string (to_string (r)), r);
    }
    EXPECT_FALSE (region_from_string ("S3_1"));
}

TEST (EscapeSet, Examples)
{
    const Limits l = reference_limits ();
    const double R0 = 1.0 / l.kappa0;
    EXPECT_TRUE (in_escape_set ({R0, kPi / 2.0, 0.0, 0.0}, l, 0.05));
    EXPECT_FALSE (in_escape_set ({0.0, 0.0, 0.0, 0.0}, l, 0.05));
    EXPECT_FALSE (in_escape_set ({0.99 * R0, kPi / 2.0, 0.0, 0.0}, l, 0.05));
}
