#pragma once
/**
 * @file   error_frame.hpp
 * @brief  Path-following error (rho, psi), its dynamics, and region classification.
 */

#include <cpf/param_design.hpp>
#include <cpf/path.hpp>
#include <cpf/types.hpp>

#include <optional>
#include <string_view>

namespace cpf
{
    struct PathError
    {
        double rho = 0.0;     ///< signed lateral error, positive left of the path (m)
        double psi = 0.0;     ///< heading error relative to the path tangent, in [-pi, pi) (rad)
        double s_proj = 0.0;  ///< arc length of the projection (m)
        double kappa_p = 0.0; ///< curvature at the projection (1/m)
    };

    struct ErrorRates
    {
        double rho_dot = 0.0;
        double psi_dot = 0.0;
    };

    /**
     * @brief Regions of the error plane.
     *
     * S1_1..S1_6 split the coordination set by the signs of rho, psi and the
     * manifold value; S2_1..S2_4 split the rest of the universe |rho| <= R2.
     */
    enum class Region
    {
        S1_1,
        S1_2,
        S1_3,
        S1_4,
        S1_5,
        S1_6,
        S2_1,
        S2_2,
        S2_3,
        S2_4,
        OutsideS
    };

    [[nodiscard]] std::string_view to_string (Region region);
    [[nodiscard]] std::optional<Region> region_from_string (std::string_view tag);
    [[nodiscard]] bool in_s1 (Region region);

    /// Manifold value k1 rho + k2 psi + k3 sin(psi).
    [[nodiscard]] double theta_manifold (double rho, double psi, const CoordParams &params);

    /// Membership in {|rho| <= R1, |psi| <= a, |a rho + R1 psi| <= a R1}.
    [[nodiscard]] bool in_coordination_set (double rho, double psi, const CoordParams &params);

    /// Error of a pose with respect to a path; psi = wrap(theta - tangent angle).
    [[nodiscard]] PathError compute_error (const Pose &pose, const Path &path, std::optional<double> hint_s = std::nullopt);

    /**
     * @brief Right-hand side rho' = v sin psi, psi' = omega - kappa v cos psi / (1 - kappa rho).
     * @throws SingularDenominator if 1 - kappa rho <= 0.
     */
    [[nodiscard]] ErrorRates error_dynamics (const PathError &err, double v, double omega);

    /// Total classification; ties resolved by checking S1 subsets in order, then S2_2/S2_4, then S2_1/S2_3.
    [[nodiscard]] Region classify (const PathError &err, const CoordParams &params);

    /**
     * @brief Membership in the escape set of an unconstrained design whose set spans |rho| <= R0.
     *
     * True iff v_min (psi - eps0) sin(eps0) / omega_max + rho - R0 > 0 with
     * rho in [0, R0] and psi in [0, pi/2].
     */
    [[nodiscard]] bool in_escape_set (const PathError &err, const Limits &limits, double eps0);

} // namespace cpf
