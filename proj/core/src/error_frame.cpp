#include <cpf/error_frame.hpp>
#include <cpf/errors.hpp>

#include <array>
#include <cmath>
#include <string>

namespace cpf
{
    namespace
    {
        constexpr std::array<std::string_view, 11> kRegionNames = {"S1_1", "S1_2", "S1_3", "S1_4", "S1_5", "S1_6",
                                                                  "S2_1", "S2_2", "S2_3", "S2_4", "OutsideS"};
    }

    std::string_view to_string (Region region) { return kRegionNames[static_cast<std::size_t> (region)]; }

    std::optional<Region> region_from_string (std::string_view tag)
    {
        for (std::size_t i = 0; i < kRegionNames.size (); ++i)
            if (kRegionNames[i] == tag)
                return static_cast<Region> (i);
        return std::nullopt;
    }

    bool in_s1 (Region region) { return region <= Region::S1_6; }

    double theta_manifold (double rho, double psi, const CoordParams &p) { return p.k1 * rho + p.k2 * psi + p.k3 * std::sin (psi); }

    bool in_coordination_set (double rho, double psi, const CoordParams &p)
    {
        return std::abs (rho) <= p.R1 && std::abs (psi) <= p.a && std::abs (p.a * rho + p.R1 * psi) <= p.a * p.R1;
    }

    PathError compute_error (const Pose &pose, const Path &path, std::optional<double> hint_s)
    {
        const Projection proj = path.project (pose.position (), hint_s);
        return {proj.rho, wrap_angle (pose.theta - proj.tangent_angle), proj.s, proj.curvature};
    }

    ErrorRates error_dynamics (const PathError &err, double v, double omega)
    {
        const double denom = 1.0 - err.kappa_p * err.rho;
        if (!(denom > 0.0))
            throw SingularDenominator ("1 - kappa*rho = " + std::to_string (denom) + " is not positive");
        return {v * std::sin (err.psi), omega - err.kappa_p * v * std::cos (err.psi) / denom};
    }

    Region classify (const PathError &err, const CoordParams &p)
    {
        const double rho = err.rho;
        const double psi = err.psi;

        if (in_coordination_set (rho, psi, p))
        {
            const double th = theta_manifold (rho, psi, p);
            if (rho > 0.0 && psi >= 0.0 && th > 0.0)
                return Region::S1_1;
            if (rho <= 0.0 && psi >= 0.0 && th >= 0.0)
                return Region::S1_2;
            if (rho < 0.0 && psi <= 0.0 && th < 0.0)
                return Region::S1_3;
            if (rho >= 0.0 && psi <= 0.0 && th <= 0.0)
                return Region::S1_4;
            if (rho < 0.0 && psi > 0.0 && th < 0.0)
                return Region::S1_5;
            return Region::S1_6;
        }

        if (std::abs (rho) > p.R2)
            return Region::OutsideS;
        if (rho >= -p.R2 && rho < -p.R1 && psi > 0.0 && psi <= p.a)
            return Region::S2_2;
        if (rho > p.R1 && rho <= p.R2 && psi >= -p.a && psi < 0.0)
            return Region::S2_4;
        if (psi > 0.0 || (psi == 0.0 && rho > p.R1))
            return Region::S2_1;
        return Region::S2_3;
    }

    bool in_escape_set (const PathError &err, const Limits &limits, double eps0)
    {
        const double r0 = 1.0 / limits.kappa0;
        if (err.rho < 0.0 || err.rho > r0 || err.psi < 0.0 || err.psi > 0.5 * kPi)
            return false;
        return limits.v_min * (err.psi - eps0) * std::sin (eps0) / limits.omega_max + err.rho - r0 > 0.0;
    }

} // namespace cpf
