#include "fixtures.hpp"

#include <cpf/coordination.hpp>

#include <gtest/gtest.h>

#include <vector>

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

TEST (PreNeighbors, CyclicWrapAround)
{
    const std::vector<ProjectionSample> s = {{1, 0.0, 0.0}, {2, 100.0, 0.0}, {3, 200.0, 0.0}};
    const CoordinationState st = update_pre_neighbors (s, circle1000 (), kCircleL);
    EXPECT_EQ (st.find (1)->pre_neighbor, 2);
    EXPECT_EQ (st.find (2)->pre_neighbor, 3);
    EXPECT_EQ (st.find (3)->pre_neighbor, 1);
    EXPECT_NEAR (compute_zeta (st, 3, kCircleL), circle1000 ().total_length () - 200.0, 1e-9);

    double total = 0.0;
    for (int id : {1, 2, 3})
        total += compute_zeta (st, id, kCircleL);
    EXPECT_NEAR (total, circle1000 ().total_length (), 1e-9);
}

TEST (PreNeighbors, TieOrderedByLabel)
{
    const std::vector<ProjectionSample> s = {{5, 300.0, 0.0}, {2, 300.0, 0.0}};
    const CoordinationState st = update_pre_neighbors (s, circle1000 (), kCircleL);
    EXPECT_EQ (st.find (2)->pre_neighbor, 5);
    EXPECT_DOUBLE_EQ (compute_zeta (st, 2, kCircleL), 0.0);
}

TEST (PreNeighbors, FarVehiclesExcluded)
{
    const std::vector<ProjectionSample> s = {{1, 0.0, 0.0}, {2, 100.0, 600.0}, {3, 200.0, -10.0}};
    const CoordinationState st = update_pre_neighbors (s, circle1000 (), kCircleL);
    EXPECT_FALSE (st.find (2)->eligible);
    EXPECT_FALSE (st.find (2)->pre_neighbor);
    EXPECT_EQ (st.find (1)->pre_neighbor, 3);
    EXPECT_EQ (st.find (3)->pre_neighbor, 1);
    EXPECT_DOUBLE_EQ (compute_zeta (st, 2, kCircleL), kCircleL);
}

TEST (PreNeighbors, OpenPathChainAndSingleVehicle)
{
    const Path line = Path::line (Vec2::Zero (), 0.0, 5000.0, 0.002);
    const std::vector<ProjectionSample> s = {{1, 50.0, 0.0}, {2, 10.0, 0.0}, {3, 90.0, 0.0}};
    const CoordinationState st = update_pre_neighbors (s, line, 40.0);
    EXPECT_EQ (st.find (2)->pre_neighbor, 1);
    EXPECT_EQ (st.find (1)->pre_neighbor, 3);
    EXPECT_FALSE (st.find (3)->pre_neighbor);
    EXPECT_DOUBLE_EQ (compute_zeta (st, 3, 40.0), 40.0);

    const std::vector<ProjectionSample> one = {{7, 10.0, 0.0}};
    EXPECT_FALSE (update_pre_neighbors (one, circle1000 (), kCircleL).find (7)->pre_neighbor);
}

TEST (Zeta, Examples)
{
    const std::vector<ProjectionSample> s = {{1, 0.0, 0.0}, {2, 1047.2, 0.0}};
    const CoordinationState st = update_pre_neighbors (s, circle1000 (), kCircleL);
    EXPECT_NEAR (compute_zeta (st, 1, kCircleL), 1047.2, 1e-9);
    EXPECT_DOUBLE_EQ (compute_zeta (st, 42, kCircleL), kCircleL);
}

TEST (FixedTopology, SignedOffsets)
{
    const std::vector<ProjectionSample> s = {{1, 400.0, 0.0}, {2, 380.0, 0.0}, {3, 410.0, 0.0}, {4, 0.0, 900.0}};
    const std::map<int, int> pre = {{2, 1}, {3, 2}, {4, 3}};
    const CoordinationState st = assign_fixed_topology (s, pre, 0.002, 0.0);
    EXPECT_FALSE (st.find (1)->pre_neighbor);
    EXPECT_DOUBLE_EQ (st.find (2)->zeta, 20.0);
    EXPECT_DOUBLE_EQ (st.find (3)->zeta, -30.0);
    EXPECT_FALSE (st.find (4)->pre_neighbor); // |rho| >= R0
    EXPECT_DOUBLE_EQ (compute_zeta (st, 4, 0.0), 0.0);
}

TEST (Overtaking, IdenticalStatesGiveNoEvents)
{
    const std::vector<ProjectionSample> s = {{1, 0.0, 0.0}, {2, 100.0, 0.0}, {3, 200.0, 0.0}};
    const CoordinationState st = update_pre_neighbors (s, circle1000 (), kCircleL);
    EXPECT_TRUE (detect_overtaking (st, st).empty ());
}

TEST (Overtaking, PreNeighborChangeNamesVehicle)
{
    const std::vector<ProjectionSample> a = {{1, 0.0, 0.0}, {2, 100.0, 0.0}, {3, 200.0, 0.0}};
    const std::vector<ProjectionSample> b = {{1, 0.0, 0.0}, {2, 201.0, 0.0}, {3, 200.0, 0.0}};
    const auto events = detect_overtaking (update_pre_neighbors (a, circle1000 (), kCircleL),
                                           update_pre_neighbors (b, circle1000 (), kCircleL));
    ASSERT_FALSE (events.empty ());
    bool saw3 = false;
    for (const auto &e : events)
    {
        EXPECT_EQ (e.kind, EventKind::pre_neighbor_changed);
        saw3 = saw3 || e.uav_id == 3;
    }
    EXPECT_TRUE (saw3);
    EXPECT_EQ (events.front ().describe ().rfind ("pre_neighbor_changed:", 0), 0u);
}

TEST (Overtaking, ZeroCrossingOnFixedTopology)
{
    const std::map<int, int> pre = {{2, 1}};
    const std::vector<ProjectionSample> a = {{1, 100.0, 0.0}, {2, 99.0, 0.0}};
    const std::vector<ProjectionSample> b = {{1, 100.0, 0.0}, {2, 101.0, 0.0}};
    const std::vector<ProjectionSample> jitter = {{1, 100.0, 0.0}, {2, 100.0 + 1e-9, 0.0}};
    const auto sa = assign_fixed_topology (a, pre, 0.002, 0.0);
    const auto events = detect_overtaking (sa, assign_fixed_topology (b, pre, 0.002, 0.0));
    ASSERT_EQ (events.size (), 1u);
    EXPECT_EQ (events[0].kind, EventKind::zeta_zero_crossing);
    EXPECT_EQ (events[0].uav_id, 2);
    EXPECT_TRUE (detect_overtaking (sa, assign_fixed_topology (jitter, pre, 0.002, 0.0)).empty ());
}
