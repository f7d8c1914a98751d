#pragma once
/**
 * @file   chi.hpp
 * @brief  Speed assignment mapping the arc distance to the pre-neighbor to an along-path speed.
 */

#include <cpf/param_design.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace cpf
{
    enum class ChiKind
    {
        derived,   ///< slopes derived from (lambda, delta1, v_m)
        piecewise, ///< explicit inner/outer slopes around L
        linear     ///< floor + slope * (zeta - L) for every zeta
    };

    [[nodiscard]] std::string_view to_string (ChiKind kind);

    /**
     * @brief Continuous non-decreasing speed assignment.
     *
     * The piecewise shapes are flat at the reduced speed v_min/(1 - kappa0 R1)
     * below L - delta1, rise with the inner slope up to L + delta1 and with
     * the outer slope beyond. The derived shape picks the inner slope so that
     * chi(L) = lambda * floor + (1 - lambda) * cos(a) v_m / (1 + kappa0 R1) and
     * doubles it outside the band.
     */
    class ChiFunction
    {
    public:
        static ChiFunction derived (const CoordParams &params);
        static ChiFunction piecewise (const CoordParams &params, double inner_slope, double outer_slope);
        static ChiFunction linear (const CoordParams &params, double slope);

        [[nodiscard]] double operator() (double zeta) const;

        [[nodiscard]] ChiKind kind () const { return kind_; }
        [[nodiscard]] double floor () const { return floor_; }
        [[nodiscard]] double inner_slope () const { return inner_slope_; }
        [[nodiscard]] double outer_slope () const { return outer_slope_; }
        [[nodiscard]] double target () const { return L_; }
        [[nodiscard]] double band () const { return delta1_; }

        /**
         * @brief Shape requirements that fail for this instance, empty when valid.
         *
         * Piecewise shapes need 0 < delta2 <= delta1 < L, a positive inner slope,
         * a non-negative outer slope and chi(L) strictly below the leader speed
         * floor. chi(L) must match the lambda formula only for the derived kind.
         */
        [[nodiscard]] std::vector<std::string> violations (const CoordParams &params) const;

    private:
        ChiFunction (ChiKind kind, double floor, double inner, double outer, double L, double delta1);

        ChiKind kind_;
        double floor_;
        double inner_slope_;
        double outer_slope_;
        double L_;
        double delta1_;
    };

} // namespace cpf
