#pragma once
/**
 * @file   types.hpp
 * @brief  Shared value types: planar vectors, poses, and the admissible control box.
 */

#include <Eigen/Core>

namespace cpf
{
    using Vec2 = Eigen::Vector2d;

    inline constexpr double kPi = 3.14159265358979323846;

    /// Planar configuration of a unicycle: position (m) and heading (rad).
    struct Pose
    {
        double x = 0.0;
        double y = 0.0;
        double theta = 0.0;

        [[nodiscard]] Vec2 position () const { return {x, y}; }
    };

    /// Speed/turn-rate limits shared by every vehicle, plus the path curvature bound.
    struct Limits
    {
        double v_min = 10.0;     ///< m/s, strictly positive (fixed-wing stall margin)
        double v_max = 25.0;     ///< m/s
        double omega_max = 0.2;  ///< rad/s
        double kappa0 = 0.002;   ///< 1/m, strict upper bound on |curvature| of every path

        [[nodiscard]] double min_turn_radius_bound () const { return 1.0 / kappa0; }
    };

    /// Wraps an angle to the half-open interval [-pi, pi).
    [[nodiscard]] double wrap_angle (double angle);

    /// Clamps x to [lo, hi]; NaN maps to lo.
    [[nodiscard]] constexpr double sat (double x, double lo, double hi)
    {
        if (!(x > lo))
            return lo;
        if (x > hi)
            return hi;
        return x;
    }

    /// Planar cross product a.x*b.y - a.y*b.x (positive when b lies left of a).
    [[nodiscard]] inline double cross (const Vec2 &a, const Vec2 &b) { return a.x () * b.y () - a.y () * b.x (); }

} // namespace cpf
