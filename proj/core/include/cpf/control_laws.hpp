#pragma once
/**
 * @file   control_laws.hpp
 * @brief  Hybrid path-following law: coordinated law inside S1, single-agent laws outside.
 */

#include <cpf/chi.hpp>
#include <cpf/error_frame.hpp>
#include <cpf/param_design.hpp>

#include <optional>

namespace cpf
{
    /// Speed and turn-rate command; always inside [v_min, v_max] x [-omega_max, omega_max].
    struct ControlCommand
    {
        double v = 0.0;
        double omega = 0.0;
        Region region = Region::OutsideS;
        bool reset_applied = false;
    };

    /// sign(theta) or, with a positive boundary layer, sat(theta / sign_epsilon, -1, 1). sign(0) = 0.
    [[nodiscard]] double switching_term (double theta, const CoordParams &params);

    /**
     * @brief Coordinated law inside S1 before the speed reset.
     *
     * v = Sat((1 - kappa rho)/cos(psi) chi(zeta), v_min, v_max),
     * omega = Sat(v (-k1 theta/k2 + kappa cos(psi)/(1 - kappa rho)) - alpha sign(theta), +-omega_max).
     *
     * @throws WrongRegion if err is not in S1.
     */
    [[nodiscard]] ControlCommand nominal_coord_control (const PathError &err, double zeta, const CoordParams &params,
                                                        const ChiFunction &chi);

    /**
     * @brief Coordinated law inside S1.
     *
     * nominal_coord_control() followed by reset_value(): v is lowered by reset_value() if the boundary condition of the
     * current subset fails. omega is not recomputed after the reset.
     *
     * @throws WrongRegion if err is not in S1.
     */
    [[nodiscard]] ControlCommand coord_control (const PathError &err, double zeta, const CoordParams &params,
                                                const ChiFunction &chi);

    /**
     * @brief Speed correction enforcing the boundary condition of the current S1 subset.
     *
     * With margin m = alpha * switching_term(theta):
     *  - S1_1: v c_s + R1 omega + R1 m <= 0, else v = -R1 (omega + m) / c_s
     *  - S1_3: v c_s + R1 omega + R1 m >= 0, else the same formula
     *  - S1_2, S1_6: psi' + m <= 0, else v = (1 - kappa rho)(omega + m) / (kappa cos psi)
     *  - S1_4, S1_5: psi' + m >= 0, else the same formula
     * where c_s = a sin(psi) - R1 kappa cos(psi) / (1 - kappa rho). The result is clamped to the speed box.
     */
    [[nodiscard]] double reset_value (const ControlCommand &cmd, const PathError &err, const CoordParams &params);

    /// Box-set law for rho > R1, psi in [-a, 0): full speed turning toward the path, greedy in the switching band.
    [[nodiscard]] ControlCommand near_optimal_control_s24 (const PathError &err, const CoordParams &params);

    /// Mirror image of near_optimal_control_s24 under (rho, psi, omega, kappa) -> (-rho, -psi, -omega, -kappa).
    [[nodiscard]] ControlCommand near_optimal_control_s22 (const PathError &err, const CoordParams &params);

    /// (v_min, -omega_max) in S2_1 and (v_min, +omega_max) in S2_3.
    [[nodiscard]] ControlCommand robust_control_s21_s23 (const PathError &err, const CoordParams &params);

    /**
     * @brief Dispatches to the law of the region containing err.
     * @param zeta arc distance to the pre-neighbor; nullopt means no pre-neighbor and uses L.
     * @throws OutsideUniverse if |rho| > R2.
     */
    [[nodiscard]] ControlCommand hybrid_supervisor (const PathError &err, std::optional<double> zeta,
                                                    const CoordParams &params, const ChiFunction &chi);

    enum class ComparisonSystem
    {
        S21,
        S23
    };

    /**
     * @brief Rho-axis crossing of the worst-case comparison trajectory from err0.
     *
     * Integrates the curvature-bounded comparison system with RK4 (step h)
     * until psi reaches 0; returns the rho value at the crossing, or nullopt
     * if |rho| exceeds R2 first.
     */
    [[nodiscard]] std::optional<double> comparison_system_trajectory (const PathError &err0, const CoordParams &params,
                                                                      ComparisonSystem which, double h = 1e-3);

} // namespace cpf
