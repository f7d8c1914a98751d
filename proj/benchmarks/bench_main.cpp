#include "fixtures.hpp"

#include <cpf/control_laws.hpp>
#include <cpf/param_design.hpp>
#include <cpf/path.hpp>
#include <cpf/simulator.hpp>

#include <benchmark/benchmark.h>

#include <random>

using namespace cpf;
using namespace cpf::testing;

namespace
{
    void BM_ProjectCircle (benchmark::State &state)
    {
        const Path c = Path::circle (Vec2::Zero (), 1000.0, Direction::counterclockwise, 0.002);
        std::mt19937_64 rng (1);
        std::uniform_real_distribution<double> u (-1400.0, 1400.0);
        for (auto _ : state)
            benchmark::DoNotOptimize (c.project (Vec2 (u (rng), 1500.0)));
    }
    BENCHMARK (BM_ProjectCircle);

    void BM_ProjectSplineGlobal (benchmark::State &state)
    {
        const Path p = Path::bspline (waypoint_xy (), 0.002);
        std::mt19937_64 rng (2);
        std::uniform_real_distribution<double> s (0.0, p.total_length ());
        for (auto _ : state)
            benchmark::DoNotOptimize (p.project (p.point_at (s (rng)) + Vec2 (30.0, -20.0)));
    }
    BENCHMARK (BM_ProjectSplineGlobal);

    void BM_ProjectSplineHinted (benchmark::State &state)
    {
        const Path p = Path::bspline (waypoint_xy (), 0.002);
        std::mt19937_64 rng (3);
        std::uniform_real_distribution<double> s (0.0, p.total_length ());
        for (auto _ : state)
        {
            const double at = s (rng);
            benchmark::DoNotOptimize (p.project (p.point_at (at) + Vec2 (30.0, -20.0), at + 0.2));
        }
    }
    BENCHMARK (BM_ProjectSplineHinted);

    void BM_HybridSupervisor (benchmark::State &state)
    {
        const CoordParams p = reference_params ();
        const ChiFunction chi = reference_chi (p);
        std::mt19937_64 rng (4);
        std::uniform_real_distribution<double> rho (-p.R2, p.R2);
        std::uniform_real_distribution<double> psi (-kPi, kPi);
        for (auto _ : state)
            benchmark::DoNotOptimize (hybrid_supervisor ({rho (rng), psi (rng), 0.0, 0.001}, p.L, p, chi));
    }
    BENCHMARK (BM_HybridSupervisor);

    void BM_DesignCoordinationSet (benchmark::State &state)
    {
        for (auto _ : state)
            benchmark::DoNotOptimize (design_coordination_set (reference_limits (), 1.0, 0.01));
    }
    BENCHMARK (BM_DesignCoordinationSet)->Unit (benchmark::kMillisecond);

    void BM_SimulatorStepSixUavs (benchmark::State &state)
    {
        Simulator sim (circle_scenario (1e9));
        for (auto _ : state)
            benchmark::DoNotOptimize (sim.step ());
    }
    BENCHMARK (BM_SimulatorStepSixUavs);
} // namespace

BENCHMARK_MAIN ();
