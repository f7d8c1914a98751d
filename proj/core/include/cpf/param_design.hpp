#pragma once
/**
 * @file   param_design.hpp
 * @brief  Coordination-set parameters and the constrained maximization of a * R1.
 */

#include <cpf/types.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace cpf
{
    /**
     * @brief Designed set geometry, control gains and margins.
     *
     * The coordination set is {|rho| <= R1, |psi| <= a, |a rho + R1 psi| <= a R1};
     * the controlled universe is |rho| <= R2.
     */
    struct CoordParams
    {
        Limits limits;

        double a = 0.0;   ///< heading half-width of the set (rad)
        double R1 = 0.0;  ///< lateral half-width of the set (m)
        double v_m = 0.0; ///< speed floor guaranteed by the speed reset (m/s)
        double R2 = 0.0;  ///< lateral extent of the controlled universe (m)

        double alpha = 0.01; ///< turn-rate margin (rad/s)
        double c = 1.0;      ///< along-path speed margin between leader and follower (m/s)

        double k1 = 1.0;
        double k2 = 1.0;
        double k3 = 1.0;

        double eps0 = 0.05; ///< width of the heading band where the box-set laws switch (rad)

        double lambda = 0.05; ///< weight of the reduced speed in chi(L)
        double delta1 = 6.0;  ///< half-width of the slope-change band of chi (m)
        double delta2 = 6.0;  ///< half-width of the strictly increasing band of chi (m)
        double L = 0.0;       ///< desired arc distance to the pre-neighbor (m)

        double sign_epsilon = 1e-3; ///< boundary-layer width replacing sign(); 0 selects the pure sign

        [[nodiscard]] double R0 () const { return 1.0 / limits.kappa0; }
        [[nodiscard]] double min_along_path_speed () const { return limits.v_min / (1.0 - limits.kappa0 * R1); }
        [[nodiscard]] double leader_speed_floor () const { return std::cos (a) * v_m / (1.0 + limits.kappa0 * R1); }
    };

    /// One standing inequality evaluated at a parameter set; satisfied iff the strictness rule holds for slack.
    struct ConstraintSlack
    {
        std::string name;
        double slack = 0.0; ///< right side minus left side
        bool strict = false;

        [[nodiscard]] bool satisfied () const { return strict ? slack > 0.0 : slack >= 0.0; }
    };

    /// Every set, gain and margin inequality, in a fixed order.
    [[nodiscard]] std::vector<ConstraintSlack> constraint_slacks (const CoordParams &params);

    /// Only the inequalities that involve (a, R1, v_m, alpha, c) and the limits.
    [[nodiscard]] std::vector<ConstraintSlack> design_slacks (const Limits &limits, double a, double R1, double v_m,
                                                              double c, double alpha);

    [[nodiscard]] bool all_satisfied (const std::vector<ConstraintSlack> &slacks);

    /// Sufficient condition for a feasible design: kappa0 <= omega_max / v_max and v_min + c <= v_max.
    [[nodiscard]] bool check_feasibility_precondition (const Limits &limits, double c);

    /// Human-readable description of the first violated precondition, or empty.
    [[nodiscard]] std::string precondition_violation (const Limits &limits, double c);

    /**
     * @brief Largest v_m feasible for a fixed (a, R1), or a negative value if none.
     *
     * The turn-rate inequalities bound v_m from above and the along-path
     * speed margin bounds it from below, so the largest feasible value is
     * the upper bound whenever the interval is non-empty.
     */
    [[nodiscard]] double max_feasible_vm (const Limits &limits, double a, double R1, double c, double alpha);

    struct DesignOptions
    {
        int grid_r = 1024;         ///< coarse R1 samples over (0, R0)
        int zoom_levels = 12;      ///< successive R1 refinements around the incumbent
        int zoom_grid = 64;        ///< R1 samples per refinement
        int bisection_steps = 64;  ///< bisection steps for the widest feasible a at each R1
        int threads = 0;           ///< 0 keeps the OpenMP default
    };

    struct DesignResult
    {
        double a = 0.0;
        double R1 = 0.0;
        double v_m = 0.0;

        [[nodiscard]] double objective () const { return a * R1; }
    };

    /**
     * @brief Maximizes a * R1 subject to the set, turn-rate and speed-margin inequalities.
     *
     * For fixed R1 every inequality gets easier as a shrinks, so the feasible
     * a values form an interval and its upper end is found by bisection. The
     * remaining one-dimensional search over R1 is a grid with zoom refinement;
     * candidates are reduced in grid order with a lexicographic tie-break on
     * (a, R1, v_m), so the result does not depend on the thread count.
     *
     * @throws Infeasible if the precondition fails or no sampled radius is feasible.
     */
    [[nodiscard]] DesignResult design_coordination_set (const Limits &limits, double c, double alpha,
                                                        const DesignOptions &options = {});

    /// R2 = 0.9 * (1/kappa0 - v_min/omega_max).
    [[nodiscard]] double default_R2 (const Limits &limits);

    /// Parameter set with default gains (k1 = 1, k2 = R1/a + 1, k3 = 1), margins and R2.
    [[nodiscard]] CoordParams make_params (const Limits &limits, const DesignResult &design, double c, double alpha,
                                           double L);

    /// Upper bound on |d zeta / dt| imposed by the speed assignment: (1 - lambda)(cos a v_m/(1+k0 R1) - v_min/(1-k0 R1)).
    [[nodiscard]] double coordination_rate_bound (const CoordParams &params);

} // namespace cpf
