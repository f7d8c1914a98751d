#pragma once
/**
 * @file   coordination.hpp
 * @brief  Pre-neighbor relations, arc distances and overtaking detection.
 */

#include <cpf/path.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cpf
{
    enum class Topology
    {
        cyclic_sequence, ///< all vehicles share one path, ordered by projection
        tree             ///< each vehicle follows its own translated path, pre-neighbors fixed by configuration
    };

    [[nodiscard]] std::string_view to_string (Topology topology);

    /// Projection of one vehicle at the current step.
    struct ProjectionSample
    {
        int uav_id = 0;
        double s_proj = 0.0;
        double rho = 0.0;
    };

    struct CoordinationEntry
    {
        int uav_id = 0;
        double s_proj = 0.0;
        double l = 0.0;                  ///< arc distance from the reference point (m)
        bool eligible = false;           ///< |rho| < R0
        std::optional<int> pre_neighbor; ///< nearest vehicle ahead
        double zeta = 0.0;               ///< arc distance to the pre-neighbor, L when there is none
    };

    struct CoordinationState
    {
        Topology topology = Topology::cyclic_sequence;
        double reference_s = 0.0;
        bool closed = false;
        double path_length = 0.0;
        std::vector<CoordinationEntry> entries; ///< sorted by uav_id

        [[nodiscard]] const CoordinationEntry *find (int uav_id) const;
    };

    /**
     * @brief Recomputes pre-neighbors for vehicles sharing one path.
     *
     * Eligible vehicles are ordered by (s, id); each takes the next one as
     * pre-neighbor, wrapping around on closed paths. A vehicle alone on a
     * closed path, and the head of an open-path chain, get none.
     */
    [[nodiscard]] CoordinationState update_pre_neighbors (std::span<const ProjectionSample> projections, const Path &path,
                                                          double L, double reference_s = 0.0);

    /**
     * @brief Fixed pre-neighbor assignment for vehicles on translated copies of one open path.
     *
     * zeta_i = l_j - l_i is signed, since arc positions on translates correspond one to one.
     * A pre-neighbor that is not eligible (|rho| >= R0) or absent is dropped.
     */
    [[nodiscard]] CoordinationState assign_fixed_topology (std::span<const ProjectionSample> projections,
                                                           const std::map<int, int> &pre_neighbors, double kappa0,
                                                           double L, double reference_s = 0.0);

    /// zeta of a vehicle; L if it has no pre-neighbor or is unknown.
    [[nodiscard]] double compute_zeta (const CoordinationState &state, int uav_id, double L);

    enum class EventKind
    {
        pre_neighbor_changed,
        zeta_zero_crossing
    };

    [[nodiscard]] std::string_view to_string (EventKind kind);

    struct OvertakingEvent
    {
        int uav_id = 0;
        EventKind kind = EventKind::pre_neighbor_changed;
        std::optional<int> previous;
        std::optional<int> current;

        [[nodiscard]] std::string describe () const;
    };

    /// Threshold below which a wrapped arc difference is treated as zero (m).
    inline constexpr double kZeroCrossingThreshold = 1e-6;

    /**
     * @brief Events between two consecutive coordination states.
     *
     * Fires when a vehicle's pre-neighbor id changes, or when the wrapped
     * signed arc difference to an unchanged pre-neighbor changes sign by more
     * than the threshold on both sides.
     */
    [[nodiscard]] std::vector<OvertakingEvent> detect_overtaking (const CoordinationState &prev,
                                                                  const CoordinationState &curr);

} // namespace cpf
