#include "fixtures.hpp"
#include "generators.hpp"

#include <cpf/control_laws.hpp>
#include <cpf/errors.hpp>
#include <cpf/verification.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace cpf;
using namespace cpf::testing;

namespace
{
    void expect_in_box (const ControlCommand &cmd, const Limits &l)
    {
        EXPECT_GE (cmd.v, l.v_min);
        EXPECT_LE (cmd.v, l.v_max);
        EXPECT_GE (cmd.omega, -l.omega_max);
        EXPECT_LE (cmd.omega, l.omega_max);
    }
} // namespace

TEST (Sat, Examples)
{
    EXPECT_EQ (sat (5.0, 0.0, 10.0), 5.0);
    EXPECT_EQ (sat (-1.0, 0.0, 10.0), 0.0);
    EXPECT_EQ (sat (30.0, 10.0, 25.0), 25.0);
    EXPECT_EQ (sat (10.0, 10.0, 25.0), 10.0);
    EXPECT_EQ (sat (25.0, 10.0, 25.0), 25.0);
}

TEST (SwitchingTerm, SignAndBoundaryLayer)
{
    CoordParams p = reference_params ();
    p.sign_epsilon = 0.0;
    EXPECT_EQ (switching_term (0.3, p), 1.0);
    EXPECT_EQ (switching_term (-1e-12, p), -1.0);
    EXPECT_EQ (switching_term (0.0, p), 0.0);
    p.sign_epsilon = 0.01;
    EXPECT_DOUBLE_EQ (switching_term (0.005, p), 0.5);
    EXPECT_EQ (switching_term (-0.5, p), -1.0);
}

TEST (CoordControl, EquilibriumOnCircle)
{
    const CoordParams p = reference_params ();
    const ChiFunction chi = reference_chi (p);
    const ControlCommand cmd = coord_control ({0.0, 0.0, 0.0, 0.001}, p.L, p, chi);
    EXPECT_NEAR (cmd.v, 16.082, 5e-4);
    EXPECT_NEAR (cmd.omega, 0.016082, 5e-7);
    EXPECT_NEAR (cmd.omega, cmd.v * 0.001, 1e-15);
    EXPECT_FALSE (cmd.reset_applied);
    EXPECT_EQ (cmd.region, Region::S1_2);
}

TEST (CoordControl, StraightPathAtReducedSpeed)
{
    const CoordParams p = reference_params ();
    const ChiFunction chi = reference_chi (p);
    const ControlCommand cmd = coord_control ({0.0, 0.0, 0.0, 0.0}, p.L - p.delta1 - 50.0, p, chi);
    EXPECT_NEAR (cmd.v, 13.232, 5e-4);
    EXPECT_DOUBLE_EQ (cmd.v, p.min_along_path_speed ());
    EXPECT_DOUBLE_EQ (cmd.omega, 0.0);
}

TEST (CoordControl, RejectsPointsOutsideTheSet)
{
    const CoordParams p = reference_params ();
    EXPECT_THROW ((void)coord_control ({p.R1 + 5.0, -0.3, 0.0, 0.0}, p.L, p, reference_chi (p)), WrongRegion);
    EXPECT_THROW ((void)nominal_coord_control ({0.0, 1.0, 0.0, 0.0}, p.L, p, reference_chi (p)), WrongRegion);
}

TEST (ResetValue, UnchangedWhenConditionHolds)
{
    const CoordParams p = reference_params ();
    const PathError e{0.0, 0.0, 0.0, 0.001};
    const ControlCommand cmd = nominal_coord_control (e, p.L, p, reference_chi (p));
    EXPECT_EQ (reset_value (cmd, e, p), cmd.v);
}

TEST (ResetValue, CornerBranchRestoresInequality)
{
    // Upper-right edge of S1_1 with the turn rate saturated: the speed must drop.
    CoordParams p = reset_exercising_params (reference_params ());
    p.sign_epsilon = 0.0;
    const double psi = 0.95 * p.a;
    const double rho = p.R1 * (1.0 - psi / p.a) * (1.0 - 1e-12);
    const PathError e{rho, psi, 0.0, -p.limits.kappa0 * 0.99};
    ASSERT_EQ (classify (e, p), Region::S1_1);

    ControlCommand cmd;
    cmd.v = p.limits.v_max;
    cmd.omega = -p.limits.omega_max;
    cmd.region = Region::S1_1;
    const double coef = p.a * std::sin (psi) - p.R1 * e.kappa_p * std::cos (psi) / (1.0 - e.kappa_p * rho);
    const double m = p.alpha * switching_term (theta_manifold (rho, psi, p), p);
    ASSERT_GT (cmd.v * coef + p.R1 * cmd.omega + p.R1 * m, 0.0);

    const double v = reset_value (cmd, e, p);
    EXPECT_NEAR (v, -p.R1 * (cmd.omega + m) / coef, 1e-9);
    EXPECT_GE (v, p.v_m);
    EXPECT_LT (v, cmd.v);
    EXPECT_LE (v * coef + p.R1 * cmd.omega + p.R1 * m, 1e-9);
}

TEST (ResetValue, HeadingBranchRestoresRate)
{
    // S1_4 on a left-curving path: psi' + m >= 0 after the reset.
    CoordParams p = reset_exercising_params (reference_params ());
    p.sign_epsilon = 0.0;
    const PathError e{p.R1 * 0.2, -0.5 * p.a, 0.0, p.limits.kappa0 * 0.99};
    ASSERT_EQ (classify (e, p), Region::S1_4);

    ControlCommand cmd;
    cmd.v = p.limits.v_max;
    cmd.omega = 0.04;
    cmd.region = Region::S1_4;
    const double m = p.alpha * switching_term (theta_manifold (e.rho, e.psi, p), p);
    ASSERT_LT (error_dynamics (e, cmd.v, cmd.omega).psi_dot + m, 0.0);

    const double v = reset_value (cmd, e, p);
    EXPECT_NEAR (v, (1.0 - e.kappa_p * e.rho) * (cmd.omega + m) / (e.kappa_p * std::cos (e.psi)), 1e-9);
    ASSERT_GT (v, p.limits.v_min);
    EXPECT_LT (v, cmd.v);
    EXPECT_GE (error_dynamics (e, v, cmd.omega).psi_dot + m, -1e-12);
}

TEST (BoxLaws, S24Examples)
{
    const CoordParams p = reference_params ();
    ControlCommand c = near_optimal_control_s24 ({200.0, -0.3, 0.0, 0.001}, p);
    EXPECT_EQ (c.v, 25.0);
    EXPECT_EQ (c.omega, -0.2);

    const double psi = -p.a + 0.01;
    const double k = -0.0019;
    c = near_optimal_control_s24 ({200.0, psi, 0.0, k}, p);
    EXPECT_EQ (c.v, 25.0);
    EXPECT_DOUBLE_EQ (c.omega, std::max (-0.2, k * 25.0 * std::cos (psi) / (1.0 - k * 200.0)));

    c = near_optimal_control_s24 ({200.0, psi, 0.0, 0.0}, p);
    EXPECT_EQ (c.v, 25.0);
    EXPECT_EQ (c.omega, 0.0);
    EXPECT_THROW ((void)near_optimal_control_s24 ({0.0, 0.0, 0.0, 0.0}, p), WrongRegion);
}

TEST (BoxLaws, S22Examples)
{
    const CoordParams p = reference_params ();
    ControlCommand c = near_optimal_control_s22 ({-200.0, 0.3, 0.0, 0.0}, p);
    EXPECT_EQ (c.v, 25.0);
    EXPECT_EQ (c.omega, 0.2);
    c = near_optimal_control_s22 ({-200.0, p.a - 0.01, 0.0, 0.0}, p);
    EXPECT_EQ (c.v, 25.0);
    EXPECT_EQ (c.omega, 0.0);
}

TEST (BoxLaws, BandCommandsKeepHeadingRateSign)
{
    Gen gen (41);
    const CoordParams p = reference_params ();
    for (int i = 0; i < 10000; ++i)
    {
        const PathError e = gen.in_s24_band (p);
        const ControlCommand c4 = near_optimal_control_s24 (e, p);
        expect_in_box (c4, p.limits);
        EXPECT_GE (error_dynamics (e, c4.v, c4.omega).psi_dot, -1e-12);

        const PathError m{-e.rho, -e.psi, 0.0, -e.kappa_p};
        const ControlCommand c2 = near_optimal_control_s22 (m, p);
        EXPECT_DOUBLE_EQ (c2.v, c4.v);
        EXPECT_DOUBLE_EQ (c2.omega, -c4.omega);
        EXPECT_LE (error_dynamics (m, c2.v, c2.omega).psi_dot, 1e-12);
    }
}

TEST (RobustLaws, ConstantCommandsAndSymmetry)
{
    const CoordParams p = reference_params ();
    const PathError s21{-p.R2 * 0.5, 2.0, 0.0, 0.001};
    const PathError s23{p.R2 * 0.5, -2.0, 0.0, -0.001};
    ASSERT_EQ (classify (s21, p), Region::S2_1);
    ASSERT_EQ (classify (s23, p), Region::S2_3);
    const ControlCommand c1 = robust_control_s21_s23 (s21, p);
    const ControlCommand c3 = robust_control_s21_s23 (s23, p);
    EXPECT_EQ (c1.v, 10.0);
    EXPECT_EQ (c1.omega, -0.2);
    EXPECT_EQ (c3.v, 10.0);
    EXPECT_EQ (c3.omega, 0.2);
    EXPECT_THROW ((void)robust_control_s21_s23 ({0.0, 0.0, 0.0, 0.0}, p), WrongRegion);
}

TEST (Supervisor, DispatchAndUniverse)
{
    const CoordParams p = reference_params ();
    const ChiFunction chi = reference_chi (p);
    const PathError in_set{10.0, 0.1, 0.0, 0.0005};
    const ControlCommand direct = coord_control (in_set, p.L + 3.0, p, chi);
    const ControlCommand via = hybrid_supervisor (in_set, p.L + 3.0, p, chi);
    EXPECT_EQ (direct.v, via.v);
    EXPECT_EQ (direct.omega, via.omega);
    EXPECT_EQ (via.region, classify (in_set, p));

    const ControlCommand alone = hybrid_supervisor (in_set, std::nullopt, p, chi);
    EXPECT_EQ (alone.v, coord_control (in_set, p.L, p, chi).v);

    const PathError box{200.0, -0.3, 0.0, 0.001};
    const ControlCommand b = hybrid_supervisor (box, p.L, p, chi);
    EXPECT_EQ (b.region, Region::S2_4);
    EXPECT_EQ (b.v, near_optimal_control_s24 (box, p).v);

    EXPECT_THROW ((void)hybrid_supervisor ({p.R2 + 1.0, 0.0, 0.0, 0.0}, p.L, p, chi), OutsideUniverse);
}

TEST (Supervisor, CommandsStayInBox)
{
    Gen gen (42);
    const CoordParams p = reference_params ();
    const ChiFunction chi = reference_chi (p);
    for (int i = 0; i < 100000; ++i)
    {
        const PathError e = gen.in_box (p);
        const ControlCommand c = hybrid_supervisor (e, gen.uniform (-2000.0, 3000.0), p, chi);
        expect_in_box (c, p.limits);
    }
}

TEST (ComparisonSystem, ImmediateCrossing)
{
    const CoordParams p = reference_params ();
    const auto r = comparison_system_trajectory ({-120.0, 1e-9, 0.0, 0.0}, p, ComparisonSystem::S21);
    ASSERT_TRUE (r);
    EXPECT_NEAR (*r, -120.0, 1e-6);
    const auto m = comparison_system_trajectory ({120.0, -1e-9, 0.0, 0.0}, p, ComparisonSystem::S23);
    ASSERT_TRUE (m);
    EXPECT_NEAR (*m, 120.0, 1e-6);
}

TEST (ComparisonSystem, PerpendicularStartStaysInsideDefaultUniverse)
{
    const CoordParams p = reference_params ();
    ASSERT_NEAR (p.R2, 405.0, 1e-9);
    const auto r = comparison_system_trajectory ({0.0, kPi / 2.0, 0.0, 0.0}, p, ComparisonSystem::S21);
    ASSERT_TRUE (r);
    EXPECT_LE (*r, 405.0);
    EXPECT_GT (*r, 50.0); // curvature only pushes the crossing further out
    const auto m = comparison_system_trajectory ({0.0, -kPi / 2.0, 0.0, 0.0}, p, ComparisonSystem::S23);
    ASSERT_TRUE (m);
    EXPECT_NEAR (*m, -*r, 1e-9);
}

TEST (ComparisonSystem, StraightLineClosedForm)
{
    CoordParams p = reference_params ();
    p.limits.kappa0 = 1e-12;
    p.R2 = 1000.0;
    const auto r = comparison_system_trajectory ({0.0, kPi / 2.0, 0.0, 0.0}, p, ComparisonSystem::S21, 1e-4);
    ASSERT_TRUE (r);
    EXPECT_NEAR (*r, 50.0, 1e-3);
}

TEST (ComparisonSystem, LeavesSmallUniverse)
{
    CoordParams p = reference_params ();
    p.R2 = 40.0;
    EXPECT_FALSE (comparison_system_trajectory ({0.0, kPi / 2.0, 0.0, 0.0}, p, ComparisonSystem::S21));
}
