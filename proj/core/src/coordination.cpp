#include <cpf/coordination.hpp>

#include <algorithm>
#include <cmath>

namespace cpf
{
    namespace
    {
        double floor_mod (double x, double m)
        {
            double r = std::fmod (x, m);
            if (r < 0.0)
                r += m;
            return r >= m ? r - m : r;
        }

        double forward (const CoordinationState &st, double from, double to)
        {
            return st.closed ? floor_mod (to - from, st.path_length) : to - from;
        }

        double signed_difference (const CoordinationState &st, double from, double to)
        {
            if (!st.closed)
                return to - from;
            const double c = st.path_length;
            return floor_mod (to - from + 0.5 * c, c) - 0.5 * c;
        }

        std::vector<CoordinationEntry> base_entries (std::span<const ProjectionSample> projections, double kappa0,
                                                     const CoordinationState &st, double L)
        {
            std::vector<CoordinationEntry> entries;
            entries.reserve (projections.size ());
            for (const auto &p : projections)
            {
                CoordinationEntry e;
                e.uav_id = p.uav_id;
                e.s_proj = p.s_proj;
                e.l = forward (st, st.reference_s, p.s_proj);
                e.eligible = std::abs (p.rho) < 1.0 / kappa0;
                e.zeta = L;
                entries.push_back (e);
            }
            std::sort (entries.begin (), entries.end (),
                       [] (const CoordinationEntry &a, const CoordinationEntry &b) { return a.uav_id < b.uav_id; });
            return entries;
        }
    } // namespace

    std::string_view to_string (Topology topology)
    {
        return topology == Topology::tree ? "tree" : "cyclic-sequence";
    }

    std::string_view to_string (EventKind kind)
    {
        return kind == EventKind::pre_neighbor_changed ? "pre_neighbor_changed" : "zeta_zero_crossing";
    }

    std::string OvertakingEvent::describe () const
    {
        const auto id = [] (const std::optional<int> &x) { return x ? std::to_string (*x) : std::string ("none"); };
        return std::string (to_string (kind)) + ":" + std::to_string (uav_id) + ":" + id (previous) + "->" + id (current);
    }

    const CoordinationEntry *CoordinationState::find (int uav_id) const
    {
        const auto it = std::lower_bound (entries.begin (), entries.end (), uav_id,
                                          [] (const CoordinationEntry &e, int id) { return e.uav_id < id; });
        return (it != entries.end () && it->uav_id == uav_id) ? &*it : nullptr;
    }

    CoordinationState update_pre_neighbors (std::span<const ProjectionSample> projections, const Path &path, double L,
                                            double reference_s)
    {
        CoordinationState st;
        st.topology = Topology::cyclic_sequence;
        st.closed = path.closed ();
        st.path_length = path.total_length ();
        st.reference_s = reference_s;
        st.entries = base_entries (projections, path.kappa_bound (), st, L);

        std::vector<CoordinationEntry *> order;
        for (auto &e : st.entries)
            if (e.eligible)
                order.push_back (&e);
        std::sort (order.begin (), order.end (), [&] (const CoordinationEntry *a, const CoordinationEntry *b) {
            const double sa = path.wrap_s (a->s_proj);
            const double sb = path.wrap_s (b->s_proj);
            return sa < sb || (sa == sb && a->uav_id < b->uav_id);
        });

        const std::size_t n = order.size ();
        if (n < 2)
            return st;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (k + 1 == n && !st.closed)
                break;
            const CoordinationEntry *ahead = order[(k + 1) % n];
            order[k]->pre_neighbor = ahead->uav_id;
            order[k]->zeta = forward (st, order[k]->s_proj, ahead->s_proj);
        }
        return st;
    }

    CoordinationState assign_fixed_topology (std::span<const ProjectionSample> projections,
                                             const std::map<int, int> &pre_neighbors, double kappa0, double L,
                                             double reference_s)
    {
        CoordinationState st;
        st.topology = Topology::tree;
        st.closed = false;
        st.reference_s = reference_s;
        st.entries = base_entries (projections, kappa0, st, L);

        for (auto &e : st.entries)
        {
            const auto it = pre_neighbors.find (e.uav_id);
            if (it == pre_neighbors.end () || !e.eligible)
                continue;
            const CoordinationEntry *j = st.find (it->second);
            if (j == nullptr || !j->eligible)
                continue;
            e.pre_neighbor = j->uav_id;
            e.zeta = j->l - e.l;
        }
        return st;
    }

    double compute_zeta (const CoordinationState &state, int uav_id, double L)
    {
        const CoordinationEntry *e = state.find (uav_id);
        return (e != nullptr && e->pre_neighbor) ? e->zeta : L;
    }

    std::vector<OvertakingEvent> detect_overtaking (const CoordinationState &prev, const CoordinationState &curr)
    {
        std::vector<OvertakingEvent> events;
        for (const auto &now : curr.entries)
        {
            const CoordinationEntry *before = prev.find (now.uav_id);
            if (before == nullptr)
                continue;
            if (before->pre_neighbor != now.pre_neighbor)
            {
                events.push_back ({now.uav_id, EventKind::pre_neighbor_changed, before->pre_neighbor, now.pre_neighbor});
                continue;
            }
            if (!now.pre_neighbor)
                continue;
            const CoordinationEntry *lead_before = prev.find (*now.pre_neighbor);
            const CoordinationEntry *lead_now = curr.find (*now.pre_neighbor);
            if (lead_before == nullptr || lead_now == nullptr)
                continue;
            const double d0 = signed_difference (prev, before->s_proj, lead_before->s_proj);
            const double d1 = signed_difference (curr, now.s_proj, lead_now->s_proj);
            const bool crossed = (d0 > kZeroCrossingThreshold && d1 < -kZeroCrossingThreshold) ||
                                 (d0 < -kZeroCrossingThreshold && d1 > kZeroCrossingThreshold);
            if (crossed)
                events.push_back ({now.uav_id, EventKind::zeta_zero_crossing, now.pre_neighbor, now.pre_neighbor});
        }
        return events;
    }

} // namespace cpf
