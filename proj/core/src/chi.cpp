#include <cpf/chi.hpp>
#include <cpf/errors.hpp>

#include <cmath>
#include <sstream>

namespace cpf
{
    std::string_view to_string (ChiKind kind)
    {
        switch (kind)
        {
        case ChiKind::derived:
            return "derived";
        case ChiKind::piecewise:
            return "piecewise";
        case ChiKind::linear:
            return "linear";
        }
        return "unknown";
    }

    ChiFunction::ChiFunction (ChiKind kind, double floor, double inner, double outer, double L, double delta1)
        : kind_ (kind), floor_ (floor), inner_slope_ (inner), outer_slope_ (outer), L_ (L), delta1_ (delta1)
    {
    }

    ChiFunction ChiFunction::derived (const CoordParams &p)
    {
        const double floor = p.min_along_path_speed ();
        const double at_target = p.lambda * floor + (1.0 - p.lambda) * p.leader_speed_floor ();
        const double inner = (at_target - floor) / p.delta1;
        return ChiFunction (ChiKind::derived, floor, inner, 2.0 * inner, p.L, p.delta1);
    }

    ChiFunction ChiFunction::piecewise (const CoordParams &p, double inner_slope, double outer_slope)
    {
        return ChiFunction (ChiKind::piecewise, p.min_along_path_speed (), inner_slope, outer_slope, p.L, p.delta1);
    }

    ChiFunction ChiFunction::linear (const CoordParams &p, double slope)
    {
        return ChiFunction (ChiKind::linear, p.min_along_path_speed (), slope, slope, p.L, 0.0);
    }

    double ChiFunction::operator() (double zeta) const
    {
        if (kind_ == ChiKind::linear)
            return floor_ + inner_slope_ * (zeta - L_);
        const double lo = L_ - delta1_;
        const double hi = L_ + delta1_;
        if (zeta < lo)
            return floor_;
        if (zeta <= hi)
            return floor_ + inner_slope_ * (zeta - lo);
        return floor_ + inner_slope_ * (hi - lo) + outer_slope_ * (zeta - hi);
    }

    std::vector<std::string> ChiFunction::violations (const CoordParams &p) const
    {
        std::vector<std::string> out;
        if (!(inner_slope_ > 0.0))
            out.emplace_back ("chi inner slope must be positive");
        if (kind_ == ChiKind::linear)
            return out;

        if (!(p.delta2 > 0.0 && p.delta2 <= p.delta1 && p.delta1 < p.L))
            out.emplace_back ("chi band requires 0 < delta2 <= delta1 < L");
        if (!(outer_slope_ >= 0.0))
            out.emplace_back ("chi outer slope must be non-negative");
        if (!((*this) (p.L) < p.leader_speed_floor ()))
        {
            std::ostringstream msg;
            msg << "chi(L) = " << (*this) (p.L) << " must stay below cos(a) v_m/(1+kappa0 R1) = " << p.leader_speed_floor ();
            out.push_back (msg.str ());
        }
        if (kind_ == ChiKind::derived && !(p.lambda > 0.0 && p.lambda < 1.0))
            out.emplace_back ("lambda must lie in (0, 1)");
        return out;
    }

} // namespace cpf
