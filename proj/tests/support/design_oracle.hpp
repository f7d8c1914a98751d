#pragma once
// Design inequalities written out directly from the limits, and an exhaustive grid over them.

#include <cpf/types.hpp>

#include <cmath>

namespace cpf::testing
{
    inline bool feasible_by_hand (const Limits &l, double a, double R1, double v_m, double c, double alpha)
    {
        const double k0 = l.kappa0;
        if (!(a > 0.0 && a < kPi / 2.0 && R1 > 0.0 && k0 * R1 < 1.0 && v_m > l.v_min && v_m <= l.v_max))
            return false;
        const bool corner = v_m * std::sqrt (a * a / (R1 * R1) + k0 * k0) + alpha <= l.omega_max;
        const bool edge = v_m * k0 / (1.0 - k0 * R1) + alpha <= l.omega_max;
        const bool margin = std::cos (a) * v_m / (1.0 + k0 * R1) >= l.v_min / (1.0 - k0 * R1) + c;
        return corner && edge && margin;
    }

    /// Best a*R1 over the (a, R1, v_m) grid with the given steps.
    inline double grid_oracle (const Limits &l, double c, double alpha, double da, double dr, double dv)
    {
        double best = 0.0;
        const int na = static_cast<int> (kPi / 2.0 / da);
        const int nr = static_cast<int> (1.0 / l.kappa0 / dr);
        const int nv = static_cast<int> ((l.v_max - l.v_min) / dv);
        for (int i = 1; i < na; ++i)
        {
            const double a = i * da;
            for (int j = 1; j < nr; ++j)
            {
                const double R1 = j * dr;
                if (a * R1 <= best)
                    continue;
                for (int k = nv; k >= 1; --k)
                    if (feasible_by_hand (l, a, R1, l.v_min + k * dv, c, alpha))
                    {
                        best = a * R1;
                        break;
                    }
            }
        }
        return best;
    }

} // namespace cpf::testing
