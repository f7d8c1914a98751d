#include <cpf/control_laws.hpp>
#include <cpf/errors.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace cpf
{
    namespace
    {
        ControlCommand boxed (double v, double omega, Region region, bool reset, const Limits &l)
        {
            return {sat (v, l.v_min, l.v_max), sat (omega, -l.omega_max, l.omega_max), region, reset};
        }

        std::string describe (const PathError &err)
        {
            return "(rho=" + std::to_string (err.rho) + ", psi=" + std::to_string (err.psi) + ")";
        }

        ControlCommand s24_law (const PathError &err, const CoordParams &p, Region tag)
        {
            const Limits &l = p.limits;
            if (err.psi >= -p.a + p.eps0)
                return boxed (l.v_max, -l.omega_max, tag, false, l);

            const double drift = err.kappa_p * l.v_max * std::cos (err.psi) / (1.0 - err.kappa_p * err.rho);
            if (l.omega_max - drift >= 0.0)
                return boxed (l.v_max, std::max (-l.omega_max, drift), tag, false, l);
            const double v = l.omega_max * (1.0 - err.kappa_p * err.rho) / (err.kappa_p * std::cos (err.psi));
            return boxed (v, l.omega_max, tag, false, l);
        }
    } // namespace

    double switching_term (double theta, const CoordParams &p)
    {
        if (p.sign_epsilon > 0.0)
            return sat (theta / p.sign_epsilon, -1.0, 1.0);
        return static_cast<double> ((theta > 0.0) - (theta < 0.0));
    }

    ControlCommand nominal_coord_control (const PathError &err, double zeta, const CoordParams &p, const ChiFunction &chi)
    {
        const Region region = classify (err, p);
        if (!in_s1 (region))
            throw WrongRegion ("coordinated law requires an error inside S1, got " + std::string (to_string (region)) +
                               " at " + describe (err));
        const Limits &l = p.limits;
        const double denom = 1.0 - err.kappa_p * err.rho;
        const double cos_psi = std::cos (err.psi);
        const double theta = theta_manifold (err.rho, err.psi, p);

        const double v = sat (denom / cos_psi * chi (zeta), l.v_min, l.v_max);
        const double omega_d = v * (-p.k1 * theta / p.k2 + err.kappa_p * cos_psi / denom) - p.alpha * switching_term (theta, p);
        return {v, sat (omega_d, -l.omega_max, l.omega_max), region, false};
    }

    ControlCommand coord_control (const PathError &err, double zeta, const CoordParams &p, const ChiFunction &chi)
    {
        ControlCommand cmd = nominal_coord_control (err, zeta, p, chi);
        const double v_reset = reset_value (cmd, err, p);
        if (v_reset != cmd.v)
        {
            cmd.v = v_reset;
            cmd.reset_applied = true;
        }
        return cmd;
    }

    double reset_value (const ControlCommand &cmd, const PathError &err, const CoordParams &p)
    {
        const Limits &l = p.limits;
        const double denom = 1.0 - err.kappa_p * err.rho;
        const double cos_psi = std::cos (err.psi);
        const double margin = p.alpha * switching_term (theta_manifold (err.rho, err.psi, p), p);
        const double v = cmd.v;
        const double omega = cmd.omega;

        const auto edge_reset = [&] (bool upper) {
            const double coef = p.a * std::sin (err.psi) - p.R1 * err.kappa_p * cos_psi / denom;
            const double lhs = v * coef + p.R1 * omega + p.R1 * margin;
            const bool holds = upper ? lhs <= 0.0 : lhs >= 0.0;
            if (holds || coef == 0.0)
                return v;
            return sat (-p.R1 * (omega + margin) / coef, l.v_min, l.v_max);
        };
        const auto heading_reset = [&] (bool upper) {
            const double lhs = omega - err.kappa_p * v * cos_psi / denom + margin;
            const bool holds = upper ? lhs <= 0.0 : lhs >= 0.0;
            if (holds || err.kappa_p == 0.0)
                return v;
            return sat (denom * (omega + margin) / (err.kappa_p * cos_psi), l.v_min, l.v_max);
        };

        switch (classify (err, p))
        {
        case Region::S1_1:
            return edge_reset (true);
        case Region::S1_3:
            return edge_reset (false);
        case Region::S1_2:
        case Region::S1_6:
            return heading_reset (true);
        case Region::S1_4:
        case Region::S1_5:
            return heading_reset (false);
        default:
            return v;
        }
    }

    ControlCommand near_optimal_control_s24 (const PathError &err, const CoordParams &p)
    {
        const Region region = classify (err, p);
        if (region != Region::S2_4)
            throw WrongRegion ("S2_4 law called in " + std::string (to_string (region)) + " at " + describe (err));
        return s24_law (err, p, Region::S2_4);
    }

    ControlCommand near_optimal_control_s22 (const PathError &err, const CoordParams &p)
    {
        const Region region = classify (err, p);
        if (region != Region::S2_2)
            throw WrongRegion ("S2_2 law called in " + std::string (to_string (region)) + " at " + describe (err));
        const PathError mirrored{-err.rho, -err.psi, err.s_proj, -err.kappa_p};
        ControlCommand cmd = s24_law (mirrored, p, Region::S2_2);
        cmd.omega = -cmd.omega;
        return cmd;
    }

    ControlCommand robust_control_s21_s23 (const PathError &err, const CoordParams &p)
    {
        const Region region = classify (err, p);
        const Limits &l = p.limits;
        if (region == Region::S2_1)
            return {l.v_min, -l.omega_max, region, false};
        if (region == Region::S2_3)
            return {l.v_min, l.omega_max, region, false};
        throw WrongRegion ("robust law called in " + std::string (to_string (region)) + " at " + describe (err));
    }

    ControlCommand hybrid_supervisor (const PathError &err, std::optional<double> zeta, const CoordParams &p,
                                      const ChiFunction &chi)
    {
        if (std::abs (err.rho) > p.R2)
            throw OutsideUniverse ("|rho| = " + std::to_string (std::abs (err.rho)) + " exceeds R2 = " + std::to_string (p.R2));
        switch (classify (err, p))
        {
        case Region::S2_1:
        case Region::S2_3:
            return robust_control_s21_s23 (err, p);
        case Region::S2_2:
            return near_optimal_control_s22 (err, p);
        case Region::S2_4:
            return near_optimal_control_s24 (err, p);
        case Region::OutsideS:
            throw OutsideUniverse ("error outside the controlled universe at " + describe (err));
        default:
            return coord_control (err, zeta.value_or (p.L), p, chi);
        }
    }

    std::optional<double> comparison_system_trajectory (const PathError &err0, const CoordParams &p,
                                                        ComparisonSystem which, double h)
    {
        // The S23 system is the mirror image of the S21 one.
        const double mirror = which == ComparisonSystem::S21 ? 1.0 : -1.0;
        double rho = mirror * err0.rho;
        double psi = mirror * err0.psi;
        if (psi <= 0.0)
            return mirror * rho;

        const Limits &l = p.limits;
        const double k0 = l.kappa0;
        const auto rhs = [&] (double r, double s, double &dr, double &ds) {
            dr = l.v_min * std::sin (s);
            const double c = std::cos (s);
            if (s >= 0.5 * kPi)
                ds = -l.omega_max - k0 * l.v_min * c / (1.0 - k0 * r);
            else
                ds = -l.omega_max + k0 * l.v_min * c / (1.0 + k0 * r);
        };

        const double alpha1 = l.omega_max - k0 * l.v_min / (1.0 - k0 * p.R2);
        const double horizon = 4.0 * kPi / (alpha1 > 0.0 ? alpha1 : l.omega_max - k0 * l.v_min);
        for (double t = 0.0; t < horizon; t += h)
        {
            double r1, s1, r2, s2, r3, s3, r4, s4;
            rhs (rho, psi, r1, s1);
            rhs (rho + 0.5 * h * r1, psi + 0.5 * h * s1, r2, s2);
            rhs (rho + 0.5 * h * r2, psi + 0.5 * h * s2, r3, s3);
            rhs (rho + h * r3, psi + h * s3, r4, s4);
            const double rho_next = rho + h / 6.0 * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
            const double psi_next = psi + h / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
            if (psi_next <= 0.0)
            {
                const double w = psi / (psi - psi_next);
                const double crossing = rho + w * (rho_next - rho);
                if (std::abs (crossing) > p.R2)
                    return std::nullopt;
                return mirror * crossing;
            }
            rho = rho_next;
            psi = psi_next;
            if (std::abs (rho) > p.R2)
                return std::nullopt;
        }
        return std::nullopt;
    }

} // namespace cpf
