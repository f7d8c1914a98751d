#pragma once
/**
 * @file   escape_demo.hpp
 * @brief  Brute-force check that states in the escape set leave |rho| <= R0 under every admissible constant control.
 */

#include <cpf/types.hpp>

#include <cstddef>
#include <optional>
#include <string>

namespace cpf
{
    struct EscapeDemoOptions
    {
        int heading_samples = 20;  ///< psi values in (eps0, pi/2]
        int lateral_samples = 20;  ///< rho values per psi, all inside the escape set
        int control_grid = 21;     ///< samples per axis over [v_min, v_max] x [-omega_max, omega_max]
        double path_curvature = -0.001; ///< constant curvature in (-kappa0, 0] used for the error dynamics (1/m)
        double dt = 0.01;          ///< RK4 step (s)
        double horizon = 200.0;    ///< give up after this long (s)
        int threads = 0;           ///< 0 keeps the OpenMP default
    };

    struct EscapeDemoReport
    {
        std::size_t states = 0;
        std::size_t controls = 0;
        std::size_t pairs = 0;
        std::size_t exits = 0;
        double exit_fraction = 0.0;
        double max_exit_time = 0.0; ///< slowest exit over all pairs (s)
        std::optional<std::string> first_non_exit;
    };

    /**
     * @brief Integrates the error dynamics for every (state, control) pair of the grids.
     * @throws ValidationError if the curvature violates (-kappa0, 0] or the grids are empty.
     */
    [[nodiscard]] EscapeDemoReport escape_demo (const Limits &limits, double eps0, const EscapeDemoOptions &options = {});

} // namespace cpf
