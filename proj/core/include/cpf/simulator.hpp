#pragma once
/**
 * @file   simulator.hpp
 * @brief  Fixed-step closed-loop simulation of several unicycles under the hybrid law.
 */

#include <cpf/chi.hpp>
#include <cpf/control_laws.hpp>
#include <cpf/coordination.hpp>
#include <cpf/error_frame.hpp>
#include <cpf/param_design.hpp>
#include <cpf/path.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cpf
{
    struct UavSpec
    {
        int id = 0;
        std::size_t path_index = 0;
        Pose initial;
        double join_time = 0.0; ///< vehicle is absent before this time (s)
    };

    struct Scenario
    {
        std::string name;
        CoordParams params;
        std::optional<ChiFunction> chi; ///< derived from params when empty
        std::vector<Path> paths;
        std::vector<UavSpec> uavs;
        Topology topology = Topology::cyclic_sequence;
        std::map<int, int> pre_neighbors; ///< tree topology only: follower id -> pre-neighbor id
        double reference_s = 0.0;
        double duration = 0.0; ///< s
        double dt = 0.01;      ///< s
        int threads = 1;

        [[nodiscard]] ChiFunction speed_assignment () const { return chi ? *chi : ChiFunction::derived (params); }

        /// Problems that make the scenario unrunnable, empty when valid.
        [[nodiscard]] std::vector<std::string> validate (bool check_parameters = true) const;
    };

    struct TraceRow
    {
        double t = 0.0;
        int uav_id = 0;
        Pose pose;
        PathError error;
        ControlCommand command;
        double zeta = 0.0;
        std::optional<int> pre_neighbor;
        std::string events; ///< ';'-separated event descriptions raised at this step
    };

    struct TimedEvent
    {
        double t = 0.0;
        OvertakingEvent event;
    };

    struct UavMetrics
    {
        int id = 0;
        std::optional<double> s1_entry_time; ///< start of the final uninterrupted stay in S1
        double tail_abs_rho_max = 0.0;       ///< over the final 10 % of the run
        double tail_abs_psi_max = 0.0;
        double final_rho = 0.0;
        double final_psi = 0.0;
        double final_zeta = 0.0;
        double final_zeta_error = 0.0;        ///< |zeta - L|
        double tail_zeta_peak_to_peak = 0.0;  ///< over the final 20 % of the run
        Region final_region = Region::OutsideS;
        std::size_t resets = 0;
    };

    struct Metrics
    {
        std::vector<UavMetrics> uavs;
        std::optional<double> all_in_s1_time;
        std::size_t events_before_all_in_s1 = 0;
        std::size_t events_after_all_in_s1 = 0;
        std::size_t steps = 0;
        double final_time = 0.0;
    };

    struct RunOptions
    {
        bool record_trace = true;
    };

    struct RunResult
    {
        std::vector<TraceRow> rows;
        std::vector<TimedEvent> events;
        Metrics metrics;
    };

    /// Pose whose error with respect to path is (rho, psi) at arc position s; requires |rho| < 1/kappa0.
    [[nodiscard]] Pose pose_from_error (const Path &path, double s, double rho, double psi);

    /// Unicycle right-hand side (v cos theta, v sin theta, omega).
    [[nodiscard]] Pose kinematics (const Pose &q, double v, double omega);

    /// One RK4 step with (v, omega) held constant; theta is wrapped.
    [[nodiscard]] Pose integrate_rk4 (const Pose &q, double v, double omega, double dt);

    /**
     * @brief Stepwise simulation state.
     *
     * Each step projects every active vehicle (warm-started from its previous
     * projection), rebuilds the coordination state, evaluates the supervisor
     * on that frozen snapshot and advances all vehicles together.
     */
    class Simulator
    {
    public:
        /// @param check_parameters also reject parameter sets that violate the design inequalities.
        explicit Simulator (Scenario scenario, bool check_parameters = true);

        /// Advances one step and returns the rows for the pre-step state. @throws OutsideUniverse.
        std::vector<TraceRow> step ();

        [[nodiscard]] double time () const { return static_cast<double> (step_index_) * scenario_.dt; }
        [[nodiscard]] std::size_t step_index () const { return step_index_; }
        [[nodiscard]] const Scenario &scenario () const { return scenario_; }
        [[nodiscard]] const std::vector<TimedEvent> &events () const { return events_; }

        /// Errors, regions and coordination of the current (not yet stepped) state.
        struct Snapshot
        {
            std::vector<int> ids;
            std::vector<PathError> errors;
            CoordinationState coordination;
        };
        [[nodiscard]] Snapshot snapshot ();

    private:
        struct Vehicle
        {
            UavSpec spec;
            Pose pose;
            bool active = false;
            std::optional<double> hint;
        };

        void activate_joiners ();
        Snapshot observe ();

        Scenario scenario_;
        ChiFunction chi_;
        std::vector<Vehicle> vehicles_;
        std::optional<CoordinationState> previous_;
        std::vector<TimedEvent> events_;
        std::size_t step_index_ = 0;
    };

    /// Runs to scenario.duration and computes metrics. @throws OutsideUniverse, ValidationError.
    [[nodiscard]] RunResult run_scenario (const Scenario &scenario, const RunOptions &options = {});

} // namespace cpf
