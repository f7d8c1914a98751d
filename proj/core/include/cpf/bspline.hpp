#pragma once
/**
 * @file   bspline.hpp
 * @brief  Clamped cubic B-spline interpolation and its arc-length table.
 */

#include <cpf/types.hpp>

#include <vector>

namespace cpf
{
    /// Position and first two parameter derivatives of a curve at one parameter value.
    struct CurveSample
    {
        Vec2 point;
        Vec2 d1;
        Vec2 d2;
    };

    /**
     * @brief Clamped cubic B-spline on the parameter interval [0, 1].
     */
    class CubicBSpline
    {
    public:
        CubicBSpline (std::vector<Vec2> control_points, std::vector<double> knots);

        /**
         * @brief Global interpolation through the waypoints.
         *
         * Parameter values follow the chord-length rule and interior knots are
         * averages of three consecutive parameter values, so the curve passes
         * through every waypoint and is C2 between them.
         *
         * @throws ValidationError with fewer than two distinct waypoints.
         */
        static CubicBSpline interpolate (const std::vector<Vec2> &waypoints);

        [[nodiscard]] CurveSample evaluate (double u) const;
        [[nodiscard]] Vec2 point (double u) const { return evaluate (u).point; }

        [[nodiscard]] const std::vector<Vec2> &control_points () const { return control_; }
        [[nodiscard]] const std::vector<double> &knots () const { return knots_; }

    private:
        [[nodiscard]] std::size_t find_span (double u) const;

        std::vector<Vec2> control_;
        std::vector<double> knots_;
    };

    /**
     * @brief Piecewise-linear bijection between arc length s and spline parameter u.
     *
     * Nodes are placed at uniform arc-length spacing; u at each node is solved
     * to machine precision with Gauss-Legendre quadrature and Newton steps. The
     * same nodes serve both directions, so s_at(u_at(s)) == s up to rounding.
     */
    class ArcLengthTable
    {
    public:
        ArcLengthTable (const CubicBSpline &curve, double resolution);

        [[nodiscard]] double length () const { return length_; }
        [[nodiscard]] double resolution () const { return resolution_; }
        [[nodiscard]] double u_at (double s) const;
        [[nodiscard]] double s_at (double u) const;

    private:
        double resolution_;
        double length_ = 0.0;
        std::vector<double> u_nodes_; ///< u at s = k * resolution, last node at s = length
    };

    /// Arc length of the curve between two parameter values (5-point Gauss-Legendre per span piece).
    [[nodiscard]] double arc_length (const CubicBSpline &curve, double u0, double u1);

} // namespace cpf
