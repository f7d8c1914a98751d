#pragma once
/**
 * @file   path.hpp
 * @brief  Directed planar reference paths parameterized by arc length.
 *
 * Sign conventions: the lateral error rho is positive when the query point
 * lies on the left of the path direction, and curvature is positive when the
 * path turns left.
 */

#include <cpf/types.hpp>

#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace cpf
{
    class CubicBSpline;
    class ArcLengthTable;

    enum class PathKind
    {
        circle,
        line,
        bspline
    };

    enum class Direction
    {
        counterclockwise,
        clockwise
    };

    [[nodiscard]] std::string_view to_string (PathKind kind);

    /// Closest point on a path to a query point.
    struct Projection
    {
        double s = 0.0;             ///< arc length of the closest point (m)
        Vec2 point = Vec2::Zero (); ///< closest point (m)
        double tangent_angle = 0.0; ///< heading of the unit tangent (rad)
        double curvature = 0.0;     ///< signed curvature at the closest point (1/m)
        double rho = 0.0;           ///< signed lateral distance, positive on the left (m)
    };

    /**
     * @brief Immutable arc-length parameterized path.
     *
     * Circles are closed; lines and B-splines are open and extend linearly
     * along their end tangents beyond both ends (curvature 0 there). Copies
     * share the B-spline lookup table.
     */
    class Path
    {
    public:
        /// @throws CurvatureBoundExceeded if 1/radius >= kappa0.
        static Path circle (const Vec2 &center, double radius, Direction direction, double kappa0);

        /// Straight line starting at origin; horizon is the simulated length reported by total_length().
        static Path line (const Vec2 &origin, double heading, double horizon, double kappa0);

        /**
         * @brief Interpolating cubic B-spline through waypoints (m).
         * @throws DegenerateSpline if the spline derivative vanishes.
         * @throws CurvatureBoundExceeded if |curvature| >= kappa0 anywhere on a 0.1 m grid.
         */
        static Path bspline (const std::vector<Vec2> &waypoints, double kappa0);

        /// Same geometry shifted by offset; arc-length parameterizations correspond one to one.
        [[nodiscard]] Path translated (const Vec2 &offset) const;

        [[nodiscard]] PathKind kind () const;
        [[nodiscard]] bool closed () const { return kind () == PathKind::circle; }
        [[nodiscard]] double total_length () const;
        [[nodiscard]] double kappa_bound () const { return kappa0_; }

        [[nodiscard]] Vec2 point_at (double s) const;
        [[nodiscard]] double tangent_angle_at (double s) const;
        [[nodiscard]] Vec2 tangent_at (double s) const;
        [[nodiscard]] double curvature_at (double s) const;

        /**
         * @brief Closest projection of a point.
         *
         * Without a hint the global minimum is returned; with a hint the
         * search is restricted to a window around it so the result stays on
         * the branch the caller was tracking.
         *
         * @throws ProjectionAmbiguous if |rho| >= 1/kappa0 and two separated minima tie.
         */
        [[nodiscard]] Projection project (const Vec2 &point, std::optional<double> hint_s = std::nullopt) const;

        /// Forward distance modulo length on closed paths; signed difference on open ones.
        [[nodiscard]] double arc_distance (double s_from, double s_to) const;

        /// Signed difference s_to - s_from, wrapped to [-C/2, C/2) on closed paths.
        [[nodiscard]] double signed_arc_difference (double s_from, double s_to) const;

        /// Maps s into [0, total_length) on closed paths; identity on open ones.
        [[nodiscard]] double wrap_s (double s) const;

        /// Largest |curvature| over samples spaced by step (m).
        [[nodiscard]] double max_abs_curvature (double step) const;

    private:
        struct CircleGeom
        {
            Vec2 center;
            double radius;
            double sense; ///< +1 counterclockwise, -1 clockwise
        };
        struct LineGeom
        {
            Vec2 origin;
            Vec2 direction;
            double horizon;
        };
        struct SplineData;
        struct SplineGeom
        {
            std::shared_ptr<const SplineData> data;
            Vec2 offset;
        };

        Path (std::variant<CircleGeom, LineGeom, SplineGeom> geom, double kappa0);

        [[nodiscard]] Projection make_projection (double s, const Vec2 &query) const;
        [[nodiscard]] Projection project_spline (const SplineGeom &g, const Vec2 &point, std::optional<double> hint) const;

        std::variant<CircleGeom, LineGeom, SplineGeom> geom_;
        double kappa0_;
    };

} // namespace cpf
