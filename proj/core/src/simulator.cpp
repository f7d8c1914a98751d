#include <cpf/errors.hpp>
#include <cpf/simulator.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <sstream>

namespace cpf
{
    namespace
    {
        constexpr double kJoinSlack = 1e-9; // s

        std::size_t step_count (const Scenario &sc) { return static_cast<std::size_t> (std::llround (sc.duration / sc.dt)); }

        struct Accumulator
        {
            int id = 0;
            std::optional<double> last_outside;
            std::optional<double> first_seen;
            double tail_rho = 0.0;
            double tail_psi = 0.0;
            double zeta_lo = 0.0;
            double zeta_hi = 0.0;
            bool zeta_seen = false;
            std::size_t resets = 0;
        };
    } // namespace

    std::vector<std::string> Scenario::validate (bool check_parameters) const
    {
        std::vector<std::string> out;
        if (!(dt > 0.0))
            out.emplace_back ("dt must be positive");
        if (!(duration >= 0.0))
            out.emplace_back ("duration must be non-negative");
        if (paths.empty ())
            out.emplace_back ("at least one path is required");
        if (uavs.empty ())
            out.emplace_back ("at least one UAV is required");
        if (threads < 1)
            out.emplace_back ("threads must be at least 1");

        std::set<int> ids;
        for (const auto &u : uavs)
        {
            if (!ids.insert (u.id).second)
                out.push_back ("duplicate UAV id " + std::to_string (u.id));
            if (u.path_index >= paths.size ())
                out.push_back ("UAV " + std::to_string (u.id) + " refers to a missing path");
            if (!(u.join_time >= 0.0))
                out.push_back ("UAV " + std::to_string (u.id) + " has a negative join time");
        }
        if (topology == Topology::cyclic_sequence)
        {
            for (const auto &u : uavs)
                if (!uavs.empty () && u.path_index != uavs.front ().path_index)
                    out.emplace_back ("cyclic-sequence topology requires all UAVs on the same path");
            if (!pre_neighbors.empty ())
                out.emplace_back ("pre_neighbors are only used with the tree topology");
        }
        else
        {
            for (const auto &[follower, leader] : pre_neighbors)
            {
                if (!ids.count (follower) || !ids.count (leader))
                    out.push_back ("pre-neighbor pair " + std::to_string (follower) + " -> " + std::to_string (leader) +
                                   " names an unknown UAV");
                if (follower == leader)
                    out.push_back ("UAV " + std::to_string (follower) + " cannot be its own pre-neighbor");
            }
            for (const auto &p : paths)
                if (p.closed ())
                    out.emplace_back ("tree topology requires open paths");
        }
        for (const auto &p : paths)
            if (p.kappa_bound () != params.limits.kappa0)
                out.emplace_back ("every path must use the limits' kappa0");

        if (!check_parameters)
            return out;
        for (const auto &s : constraint_slacks (params))
            if (!s.satisfied ())
            {
                std::ostringstream msg;
                msg << "parameter constraint '" << s.name << "' violated (slack " << s.slack << ")";
                out.push_back (msg.str ());
            }
        for (auto &v : speed_assignment ().violations (params))
            out.push_back (std::move (v));
        return out;
    }

    Pose pose_from_error (const Path &path, double s, double rho, double psi)
    {
        const double heading = path.tangent_angle_at (s);
        const Vec2 normal (-std::sin (heading), std::cos (heading));
        const Vec2 p = path.point_at (s) + rho * normal;
        return {p.x (), p.y (), wrap_angle (heading + psi)};
    }

    Pose kinematics (const Pose &q, double v, double omega) { return {v * std::cos (q.theta), v * std::sin (q.theta), omega}; }

    Pose integrate_rk4 (const Pose &q, double v, double omega, double dt)
    {
        const auto shifted = [&] (const Pose &k, double h) { return Pose{q.x + h * k.x, q.y + h * k.y, q.theta + h * k.theta}; };
        const Pose k1 = kinematics (q, v, omega);
        const Pose k2 = kinematics (shifted (k1, 0.5 * dt), v, omega);
        const Pose k3 = kinematics (shifted (k2, 0.5 * dt), v, omega);
        const Pose k4 = kinematics (shifted (k3, dt), v, omega);
        return {q.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                q.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
                wrap_angle (q.theta + dt / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta))};
    }

    Simulator::Simulator (Scenario scenario, bool check_parameters)
        : scenario_ (std::move (scenario)), chi_ (scenario_.speed_assignment ())
    {
        if (const auto problems = scenario_.validate (check_parameters); !problems.empty ())
            throw ValidationError ("invalid scenario: " + problems.front ());
        std::vector<UavSpec> specs = scenario_.uavs;
        std::sort (specs.begin (), specs.end (), [] (const UavSpec &a, const UavSpec &b) { return a.id < b.id; });
        for (const auto &s : specs)
            vehicles_.push_back ({s, s.initial, false, std::nullopt});
    }

    void Simulator::activate_joiners ()
    {
        const double t = time ();
        for (auto &v : vehicles_)
            if (!v.active && v.spec.join_time <= t + kJoinSlack)
            {
                v.active = true;
                v.pose = v.spec.initial;
                v.hint.reset ();
            }
    }

    Simulator::Snapshot Simulator::observe ()
    {
        std::vector<Vehicle *> active;
        for (auto &v : vehicles_)
            if (v.active)
                active.push_back (&v);

        Snapshot snap;
        const auto n = static_cast<long> (active.size ());
        snap.ids.resize (active.size ());
        snap.errors.resize (active.size ());
        std::vector<std::exception_ptr> failures (active.size ());

#pragma omp parallel for schedule(static) num_threads(scenario_.threads) if (scenario_.threads > 1)
        for (long i = 0; i < n; ++i)
        {
            const auto k = static_cast<std::size_t> (i);
            Vehicle &v = *active[k];
            snap.ids[k] = v.spec.id;
            try
            {
                snap.errors[k] = compute_error (v.pose, scenario_.paths[v.spec.path_index], v.hint);
            }
            catch (...)
            {
                failures[k] = std::current_exception ();
            }
        }
        for (const auto &f : failures)
            if (f)
                std::rethrow_exception (f);

        std::vector<ProjectionSample> samples;
        samples.reserve (active.size ());
        for (std::size_t k = 0; k < active.size (); ++k)
            samples.push_back ({snap.ids[k], snap.errors[k].s_proj, snap.errors[k].rho});

        if (scenario_.topology == Topology::cyclic_sequence)
        {
            const Path &shared = scenario_.paths[vehicles_.front ().spec.path_index];
            snap.coordination = update_pre_neighbors (samples, shared, scenario_.params.L, scenario_.reference_s);
        }
        else
        {
            snap.coordination = assign_fixed_topology (samples, scenario_.pre_neighbors, scenario_.params.limits.kappa0,
                                                       scenario_.params.L, scenario_.reference_s);
        }
        return snap;
    }

    Simulator::Snapshot Simulator::snapshot ()
    {
        activate_joiners ();
        return observe ();
    }

    std::vector<TraceRow> Simulator::step ()
    {
        activate_joiners ();
        const double t = time ();
        Snapshot snap = observe ();

        std::vector<OvertakingEvent> raised;
        if (previous_)
            raised = detect_overtaking (*previous_, snap.coordination);
        for (const auto &e : raised)
            events_.push_back ({t, e});

        std::vector<Vehicle *> active;
        for (auto &v : vehicles_)
            if (v.active)
                active.push_back (&v);

        const auto n = static_cast<long> (active.size ());
        std::vector<TraceRow> rows (active.size ());
        std::vector<std::exception_ptr> failures (active.size ());

#pragma omp parallel for schedule(static) num_threads(scenario_.threads) if (scenario_.threads > 1)
        for (long i = 0; i < n; ++i)
        {
            const auto k = static_cast<std::size_t> (i);
            Vehicle &v = *active[k];
            const PathError &err = snap.errors[k];
            const CoordinationEntry *entry = snap.coordination.find (v.spec.id);
            std::optional<double> zeta;
            if (entry != nullptr && entry->pre_neighbor)
                zeta = entry->zeta;
            try
            {
                const ControlCommand cmd = hybrid_supervisor (err, zeta, scenario_.params, chi_);
                TraceRow &row = rows[k];
                row.t = t;
                row.uav_id = v.spec.id;
                row.pose = v.pose;
                row.error = err;
                row.command = cmd;
                row.zeta = zeta.value_or (scenario_.params.L);
                row.pre_neighbor = entry != nullptr ? entry->pre_neighbor : std::nullopt;
            }
            catch (const OutsideUniverse &ex)
            {
                std::ostringstream msg;
                msg << "UAV " << v.spec.id << " left the controlled universe at t=" << t << " s: state (x=" << v.pose.x
                    << ", y=" << v.pose.y << ", theta=" << v.pose.theta << "), error (rho=" << err.rho
                    << ", psi=" << err.psi << "), R2=" << scenario_.params.R2 << ": " << ex.what ();
                failures[k] = std::make_exception_ptr (OutsideUniverse (msg.str ()));
            }
            catch (...)
            {
                failures[k] = std::current_exception ();
            }
        }
        for (const auto &f : failures)
            if (f)
                std::rethrow_exception (f);

        for (const auto &e : raised)
            for (auto &row : rows)
                if (row.uav_id == e.uav_id)
                    row.events += (row.events.empty () ? "" : ";") + e.describe ();

        for (std::size_t k = 0; k < active.size (); ++k)
        {
            Vehicle &v = *active[k];
            v.pose = integrate_rk4 (v.pose, rows[k].command.v, rows[k].command.omega, scenario_.dt);
            v.hint = snap.errors[k].s_proj;
        }
        previous_ = std::move (snap.coordination);
        ++step_index_;
        return rows;
    }

    RunResult run_scenario (const Scenario &scenario, const RunOptions &options)
    {
        Simulator sim (scenario);
        const std::size_t n_steps = step_count (scenario);
        const double tail10 = 0.9 * scenario.duration;
        const double tail20 = 0.8 * scenario.duration;

        RunResult result;
        std::map<int, Accumulator> acc;

        const auto absorb = [&] (int id, double t, const PathError &err, Region region, std::optional<double> zeta) {
            Accumulator &a = acc[id];
            a.id = id;
            if (!a.first_seen)
                a.first_seen = t;
            if (!in_s1 (region))
                a.last_outside = t;
            if (t >= tail10)
            {
                a.tail_rho = std::max (a.tail_rho, std::abs (err.rho));
                a.tail_psi = std::max (a.tail_psi, std::abs (err.psi));
            }
            if (zeta && t >= tail20)
            {
                if (!a.zeta_seen)
                {
                    a.zeta_lo = a.zeta_hi = *zeta;
                    a.zeta_seen = true;
                }
                a.zeta_lo = std::min (a.zeta_lo, *zeta);
                a.zeta_hi = std::max (a.zeta_hi, *zeta);
            }
        };

        if (options.record_trace)
            result.rows.reserve (n_steps * scenario.uavs.size ());
        for (std::size_t k = 0; k < n_steps; ++k)
        {
            auto rows = sim.step ();
            for (auto &row : rows)
            {
                absorb (row.uav_id, row.t, row.error, row.command.region, row.zeta);
                if (row.command.reset_applied)
                    ++acc[row.uav_id].resets;
                if (options.record_trace)
                    result.rows.push_back (std::move (row));
            }
        }

        // final state: observed but not stepped
        Simulator::Snapshot last = sim.snapshot ();
        const double t_end = sim.time ();
        Metrics &m = result.metrics;
        m.steps = n_steps;
        m.final_time = t_end;
        bool all_in = !last.ids.empty ();
        double all_time = 0.0;
        for (std::size_t k = 0; k < last.ids.size (); ++k)
        {
            const int id = last.ids[k];
            const PathError &err = last.errors[k];
            const Region region = classify (err, scenario.params);
            const CoordinationEntry *entry = last.coordination.find (id);
            const double zeta = (entry != nullptr && entry->pre_neighbor) ? entry->zeta : scenario.params.L;
            absorb (id, t_end, err, region, zeta);

            const Accumulator &a = acc[id];
            UavMetrics um;
            um.id = id;
            um.final_rho = err.rho;
            um.final_psi = err.psi;
            um.final_zeta = zeta;
            um.final_zeta_error = std::abs (zeta - scenario.params.L);
            um.final_region = region;
            um.tail_abs_rho_max = a.tail_rho;
            um.tail_abs_psi_max = a.tail_psi;
            um.tail_zeta_peak_to_peak = a.zeta_seen ? a.zeta_hi - a.zeta_lo : 0.0;
            um.resets = a.resets;
            if (in_s1 (region))
                um.s1_entry_time = a.last_outside ? *a.last_outside + scenario.dt : *a.first_seen;
            if (um.s1_entry_time)
                all_time = std::max (all_time, *um.s1_entry_time);
            else
                all_in = false;
            m.uavs.push_back (um);
        }
        if (all_in)
            m.all_in_s1_time = all_time;

        result.events = sim.events ();
        for (const auto &e : result.events)
        {
            if (m.all_in_s1_time && e.t >= *m.all_in_s1_time)
                ++m.events_after_all_in_s1;
            else
                ++m.events_before_all_in_s1;
        }
        return result;
    }

} // namespace cpf
