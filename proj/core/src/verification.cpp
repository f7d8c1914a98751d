#include <cpf/control_laws.hpp>
#include <cpf/errors.hpp>
#include <cpf/simulator.hpp>
#include <cpf/verification.hpp>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace cpf
{
    namespace
    {
        constexpr double kTol = 1e-9;
        constexpr double kMembershipSlack = 1e-4;
        constexpr double kBoundMargin = 0.10;

        struct SuiteInfo
        {
            std::string name;
            std::string description;
        };

        const std::vector<SuiteInfo> &catalogue ()
        {
            static const std::vector<SuiteInfo> suites = {
                {"boundary", "closed-loop field points into S1 on every boundary edge"},
                {"heading-rate", "theta > 0 => psi' <= -alpha, theta < 0 => psi' >= alpha; psi'/rho' <= -a/R1 on the slanted edges' subsets"},
                {"invariance", "runs started in S1 never leave it"},
                {"no-overtaking", "vehicles started in S1 with positive spacing never overtake"},
                {"reachability-box", "starts in S2_2/S2_4 reach S1 within (|rho0| - R1)/(v_min |sin psi0|)"},
                {"reachability-robust", "admissible starts in S2_1/S2_3 reach S1, S2_2 or S2_4 within pi/alpha1"},
                {"reset-bound", "a speed reset always yields v_m <= v < v_before, commands stay in the box"},
                {"sliding", "theta * theta' <= 0 where k1 v_max |sin psi| <= (k2 + k3 cos psi) alpha"},
            };
            return suites;
        }

        const std::map<std::string, std::string> &aliases ()
        {
            static const std::map<std::string, std::string> table = {
                {"theorem1", "invariance"},         {"theorem2", "no-overtaking"},
                {"theorem5", "reachability-box"},   {"theorem6", "reachability-robust"},
                {"theorem7", "reachability-robust"}, {"lemma6", "reset-bound"},
                {"remark6", "heading-rate"},         {"remark7", "sliding"},
                {"lemma1", "boundary"},
            };
            return table;
        }

        CoordParams pure_sign (CoordParams p)
        {
            p.sign_epsilon = 0.0;
            return p;
        }

        int thread_count (const VerifyOptions &o) { return o.threads > 0 ? o.threads : omp_get_max_threads (); }

        std::vector<Path> synthetic_paths (double kappa0)
        {
            const double radius = 1.0 / (0.95 * kappa0);
            return {Path::circle (Vec2::Zero (), radius, Direction::counterclockwise, kappa0),
                    Path::circle (Vec2::Zero (), radius, Direction::clockwise, kappa0),
                    Path::line (Vec2::Zero (), 0.0, 1e5, kappa0)};
        }

        struct Sampler
        {
            std::mt19937_64 rng;
            explicit Sampler (std::uint64_t seed) : rng (seed) {}

            double uniform (double lo, double hi) { return std::uniform_real_distribution<double> (lo, hi) (rng); }

            std::pair<double, double> in_s1 (const CoordParams &p)
            {
                for (;;)
                {
                    const double rho = uniform (-p.R1, p.R1);
                    const double psi = uniform (-p.a, p.a);
                    if (in_coordination_set (rho, psi, p))
                        return {rho, psi};
                }
            }

            /// Point of S1 with |psi| in the top tenth of the heading range.
            std::pair<double, double> near_corner (const CoordParams &p)
            {
                const double sign = uniform (0.0, 1.0) < 0.5 ? -1.0 : 1.0;
                const double psi = sign * p.a * (1.0 - 0.1 * uniform (0.0, 1.0));
                const double lo = std::max (-p.R1, -p.R1 - p.R1 * psi / p.a);
                const double hi = std::min (p.R1, p.R1 - p.R1 * psi / p.a);
                return {uniform (lo, hi), psi};
            }

            double zeta (const CoordParams &p)
            {
                return p.L > 0.0 ? uniform (0.0, 2.0 * p.L + 2.0 * p.delta1) : uniform (-50.0, 50.0);
            }

            double kappa (const CoordParams &p) { return uniform (-p.limits.kappa0, p.limits.kappa0) * (1.0 - 1e-12); }
        };

        std::string state_text (const PathError &e)
        {
            std::ostringstream msg;
            msg.precision (12);
            msg << "rho=" << e.rho << " psi=" << e.psi << " kappa=" << e.kappa_p;
            return msg.str ();
        }

        struct CaseOutcome
        {
            bool failed = false;
            bool skipped = false;
            std::string detail;
        };

        SuiteResult collect (const SuiteInfo &info, const std::vector<CaseOutcome> &outcomes, std::string detail = {})
        {
            SuiteResult r;
            r.name = info.name;
            r.description = info.description;
            r.detail = std::move (detail);
            for (const auto &o : outcomes)
            {
                if (o.skipped)
                {
                    ++r.skipped;
                    continue;
                }
                ++r.cases;
                if (o.failed)
                {
                    ++r.failures;
                    if (!r.counterexample)
                        r.counterexample = o.detail;
                }
            }
            r.passed = r.failures == 0 && r.cases > 0;
            return r;
        }

        template <typename F> std::vector<CaseOutcome> parallel_cases (std::size_t n, int threads, F &&body)
        {
            std::vector<CaseOutcome> out (n);
            const auto count = static_cast<long> (n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (long i = 0; i < count; ++i)
            {
                const auto k = static_cast<std::size_t> (i);
                try
                {
                    out[k] = body (k);
                }
                catch (const std::exception &ex)
                {
                    out[k] = {true, false, std::string ("exception: ") + ex.what ()};
                }
            }
            return out;
        }

        bool in_box (const ControlCommand &c, const Limits &l)
        {
            return c.v >= l.v_min && c.v <= l.v_max && c.omega >= -l.omega_max && c.omega <= l.omega_max;
        }

        Scenario single_vehicle (const CoordParams &p, const ChiFunction &chi, const Path &path, const Pose &start, double dt)
        {
            Scenario sc;
            sc.name = "verification";
            sc.params = p;
            sc.chi = chi;
            sc.paths = {path};
            sc.uavs = {UavSpec{1, 0, start, 0.0}};
            sc.dt = dt;
            sc.duration = 0.0;
            return sc;
        }

        // ---------------------------------------------------------------- algebraic suites

        SuiteResult suite_reset_bound (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi_base,
                                       const VerifyOptions &o)
        {
            const CoordParams sets[2] = {pure_sign (base), pure_sign (reset_exercising_params (base))};
            std::vector<CaseOutcome> all;
            std::size_t resets[2] = {0, 0};
            for (int which = 0; which < 2; ++which)
            {
                const CoordParams &p = sets[which];
                const ChiFunction chi = which == 0 ? chi_base : ChiFunction::derived (p);
                Sampler gen (o.seed + static_cast<std::uint64_t> (which) * 7919u);
                std::vector<std::pair<PathError, double>> cases (o.samples);
                for (std::size_t k = 0; k < cases.size (); ++k)
                {
                    const auto [rho, psi] = k % 2 == 0 ? gen.in_s1 (p) : gen.near_corner (p);
                    cases[k] = {PathError{rho, psi, 0.0, gen.kappa (p)}, gen.zeta (p)};
                }
                auto out = parallel_cases (cases.size (), thread_count (o), [&] (std::size_t k) {
                    const auto &[err, zeta] = cases[k];
                    const ControlCommand nominal = nominal_coord_control (err, zeta, p, chi);
                    const ControlCommand final_cmd = coord_control (err, zeta, p, chi);
                    CaseOutcome r;
                    std::ostringstream msg;
                    msg.precision (12);
                    if (!in_box (final_cmd, p.limits))
                    {
                        msg << "command outside the box at " << state_text (err) << ": v=" << final_cmd.v
                            << " omega=" << final_cmd.omega;
                        return CaseOutcome{true, false, msg.str ()};
                    }
                    if (final_cmd.reset_applied)
                    {
                        r.detail = "reset";
                        if (!(final_cmd.v >= p.v_m && final_cmd.v < nominal.v))
                        {
                            msg << (which ? "[reset-exercising set] " : "") << "reset to v=" << final_cmd.v
                                << " from v=" << nominal.v << " (v_m=" << p.v_m << ") at " << state_text (err)
                                << " region " << to_string (final_cmd.region);
                            return CaseOutcome{true, false, msg.str ()};
                        }
                    }
                    return r;
                });
                for (const auto &c : out)
                    if (c.detail == "reset")
                        ++resets[which];
                all.insert (all.end (), out.begin (), out.end ());
            }
            std::ostringstream detail;
            detail << "resets: " << resets[0] << " with the given parameters, " << resets[1]
                   << " with the reset-exercising set (v_m=" << sets[1].v_m << ", R1=" << sets[1].R1 << ", a=" << sets[1].a
                   << ")";
            for (auto &c : all)
                if (!c.failed)
                    c.detail.clear ();
            return collect (info, all, detail.str ());
        }

        SuiteResult suite_heading_rate (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                        const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            Sampler gen (o.seed + 101u);
            std::vector<std::pair<PathError, double>> cases (o.samples);
            for (auto &c : cases)
            {
                const auto [rho, psi] = gen.in_s1 (p);
                c = {PathError{rho, psi, 0.0, gen.kappa (p)}, gen.zeta (p)};
            }
            auto out = parallel_cases (cases.size (), thread_count (o), [&] (std::size_t k) {
                const auto &[err, zeta] = cases[k];
                const ControlCommand cmd = coord_control (err, zeta, p, chi);
                const ErrorRates f = error_dynamics (err, cmd.v, cmd.omega);
                const double th = theta_manifold (err.rho, err.psi, p);
                std::ostringstream msg;
                msg.precision (12);
                if (th > 0.0 && !(f.psi_dot <= -p.alpha + kTol))
                    msg << "theta>0 but psi'=" << f.psi_dot << " > -alpha";
                else if (th < 0.0 && !(f.psi_dot >= p.alpha - kTol))
                    msg << "theta<0 but psi'=" << f.psi_dot << " < alpha";
                else if ((cmd.region == Region::S1_1 || cmd.region == Region::S1_3) && err.psi != 0.0 &&
                         !(f.psi_dot / f.rho_dot <= -p.a / p.R1 + kTol))
                    msg << "psi'/rho'=" << f.psi_dot / f.rho_dot << " > -a/R1=" << -p.a / p.R1;
                else
                    return CaseOutcome{};
                msg << " at " << state_text (err) << " region " << to_string (cmd.region) << " v=" << cmd.v
                    << " omega=" << cmd.omega;
                return CaseOutcome{true, false, msg.str ()};
            });
            return collect (info, out);
        }

        SuiteResult suite_sliding (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                   const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            const double s_max = std::min (1.0, (p.k2 + p.k3) * p.alpha / (p.k1 * p.limits.v_max));
            const double psi_max = std::min (std::asin (s_max), p.a);
            Sampler gen (o.seed + 202u);
            std::vector<std::pair<PathError, double>> cases (o.samples);
            std::vector<char> admissible (o.samples, 0);
            for (std::size_t k = 0; k < cases.size (); ++k)
            {
                const double psi = gen.uniform (-psi_max, psi_max);
                const double lo = std::max (-p.R1, -p.R1 - p.R1 * psi / p.a);
                const double hi = std::min (p.R1, p.R1 - p.R1 * psi / p.a);
                const double rho = gen.uniform (lo, hi);
                cases[k] = {PathError{rho, psi, 0.0, gen.kappa (p)}, gen.zeta (p)};
                admissible[k] = in_coordination_set (rho, psi, p) &&
                                p.k1 * p.limits.v_max * std::abs (std::sin (psi)) <= (p.k2 + p.k3 * std::cos (psi)) * p.alpha;
            }
            auto out = parallel_cases (cases.size (), thread_count (o), [&] (std::size_t k) {
                if (!admissible[k])
                    return CaseOutcome{false, true, {}};
                const auto &[err, zeta] = cases[k];
                const ControlCommand cmd = coord_control (err, zeta, p, chi);
                const ErrorRates f = error_dynamics (err, cmd.v, cmd.omega);
                const double th = theta_manifold (err.rho, err.psi, p);
                const double th_dot = p.k1 * f.rho_dot + (p.k2 + p.k3 * std::cos (err.psi)) * f.psi_dot;
                if (th * th_dot <= kTol * std::max (1.0, std::abs (th)))
                    return CaseOutcome{};
                std::ostringstream msg;
                msg.precision (12);
                msg << "theta=" << th << " theta'=" << th_dot << " at " << state_text (err);
                return CaseOutcome{true, false, msg.str ()};
            });
            return collect (info, out);
        }

        SuiteResult suite_boundary (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                    const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            constexpr double inward = 1.0 - 1e-12;
            Sampler gen (o.seed + 303u);
            struct BoundaryCase
            {
                int edge;
                PathError err;
                double zeta;
            };
            std::vector<BoundaryCase> cases (o.boundary_samples);
            for (std::size_t k = 0; k < cases.size (); ++k)
            {
                const int edge = static_cast<int> (k % 6);
                const double t = gen.uniform (1e-6, 1.0 - 1e-6);
                double rho = 0.0, psi = 0.0;
                switch (edge)
                {
                case 0: // slanted edge, rho > 0, psi > 0
                    rho = t * p.R1;
                    psi = p.a * (1.0 - t);
                    break;
                case 1: // slanted edge, rho < 0, psi < 0
                    rho = -t * p.R1;
                    psi = -p.a * (1.0 - t);
                    break;
                case 2: // psi = a, rho in (-R1, 0)
                    rho = -t * p.R1;
                    psi = p.a;
                    break;
                case 3: // psi = -a, rho in (0, R1)
                    rho = t * p.R1;
                    psi = -p.a;
                    break;
                case 4: // rho = -R1, psi in (0, a)
                    rho = -p.R1;
                    psi = t * p.a;
                    break;
                default: // rho = R1, psi in (-a, 0)
                    rho = p.R1;
                    psi = -t * p.a;
                    break;
                }
                cases[k] = {edge, PathError{rho * inward, psi * inward, 0.0, gen.kappa (p)}, gen.zeta (p)};
            }
            auto out = parallel_cases (cases.size (), thread_count (o), [&] (std::size_t k) {
                const BoundaryCase &c = cases[k];
                const ControlCommand cmd = coord_control (c.err, c.zeta, p, chi);
                const ErrorRates f = error_dynamics (c.err, cmd.v, cmd.omega);
                const double slanted = p.a * f.rho_dot + p.R1 * f.psi_dot;
                const double scale = p.R1 * p.limits.omega_max;
                bool ok = true;
                std::string rule;
                switch (c.edge)
                {
                case 0:
                    ok = slanted <= -p.R1 * p.alpha + kTol * scale;
                    rule = "a rho' + R1 psi' <= -R1 alpha";
                    break;
                case 1:
                    ok = slanted >= p.R1 * p.alpha - kTol * scale;
                    rule = "a rho' + R1 psi' >= R1 alpha";
                    break;
                case 2:
                    ok = f.psi_dot <= -p.alpha + kTol;
                    rule = "psi' <= -alpha";
                    break;
                case 3:
                    ok = f.psi_dot >= p.alpha - kTol;
                    rule = "psi' >= alpha";
                    break;
                case 4:
                    ok = f.rho_dot >= 0.0;
                    rule = "rho' >= 0";
                    break;
                default:
                    ok = f.rho_dot <= 0.0;
                    rule = "rho' <= 0";
                    break;
                }
                if (ok)
                    return CaseOutcome{};
                std::ostringstream msg;
                msg.precision (12);
                msg << "violates " << rule << " at " << state_text (c.err) << " (rho'=" << f.rho_dot << ", psi'="
                    << f.psi_dot << ", v=" << cmd.v << ", omega=" << cmd.omega << ")";
                return CaseOutcome{true, false, msg.str ()};
            });
            return collect (info, out);
        }

        // ---------------------------------------------------------------- closed-loop suites

        double membership_violation (const PathError &e, const CoordParams &p)
        {
            return std::max ({std::abs (e.rho) / p.R1 - 1.0, std::abs (e.psi) / p.a - 1.0,
                              std::abs (p.a * e.rho + p.R1 * e.psi) / (p.a * p.R1) - 1.0});
        }

        SuiteResult suite_invariance (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                      const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            const auto paths = synthetic_paths (p.limits.kappa0);
            Sampler gen (o.seed + 404u);
            struct Start
            {
                std::size_t path;
                double s, rho, psi;
            };
            std::vector<Start> starts (o.runs);
            for (std::size_t k = 0; k < starts.size (); ++k)
            {
                const auto [rho, psi] = gen.in_s1 (p);
                starts[k] = {k % paths.size (), gen.uniform (0.0, paths[k % paths.size ()].total_length ()), rho, psi};
            }
            const auto steps = static_cast<std::size_t> (std::llround (o.run_duration / o.dt));
            auto out = parallel_cases (starts.size (), thread_count (o), [&] (std::size_t k) {
                const Start &st = starts[k];
                const Path &path = paths[st.path];
                Simulator sim (single_vehicle (p, chi, path, pose_from_error (path, st.s, st.rho, st.psi), o.dt), false);
                bool outside_prev = false;
                for (std::size_t i = 0; i < steps; ++i)
                {
                    const auto rows = sim.step ();
                    const PathError &e = rows.front ().error;
                    const double viol = membership_violation (e, p);
                    const bool outside = viol > kTol;
                    if (viol > kMembershipSlack || (outside && outside_prev))
                    {
                        std::ostringstream msg;
                        msg.precision (12);
                        msg << "left S1 at t=" << rows.front ().t << " on " << to_string (path.kind ()) << " (kappa "
                            << path.curvature_at (0.0) << ") from rho0=" << st.rho << " psi0=" << st.psi << ": "
                            << state_text (e) << " violation " << viol;
                        return CaseOutcome{true, false, msg.str ()};
                    }
                    outside_prev = outside;
                }
                return CaseOutcome{};
            });
            return collect (info, out);
        }

        SuiteResult suite_reachability_box (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                            const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            const auto paths = synthetic_paths (p.limits.kappa0);
            Sampler gen (o.seed + 505u);
            struct Start
            {
                std::size_t path;
                double s, rho, psi;
            };
            std::vector<Start> starts (2 * o.runs);
            for (std::size_t k = 0; k < starts.size (); ++k)
            {
                const bool box4 = k < o.runs;
                const double rho = gen.uniform (p.R1, p.R2) * (1.0 - 1e-12) + 1e-9;
                const double psi = -gen.uniform (1e-3, p.a);
                starts[k] = {k % paths.size (), gen.uniform (0.0, paths[k % paths.size ()].total_length ()),
                             box4 ? rho : -rho, box4 ? psi : -psi};
            }
            auto out = parallel_cases (starts.size (), thread_count (o), [&] (std::size_t k) {
                const Start &st = starts[k];
                const Path &path = paths[st.path];
                const double bound = (std::abs (st.rho) - p.R1) / (p.limits.v_min * std::abs (std::sin (st.psi)));
                const double limit = (1.0 + kBoundMargin) * bound + o.dt;
                Simulator sim (single_vehicle (p, chi, path, pose_from_error (path, st.s, st.rho, st.psi), o.dt), false);
                const Region start_region = classify (sim.snapshot ().errors.front (), p);
                if (start_region != Region::S2_2 && start_region != Region::S2_4)
                    return CaseOutcome{false, true, {}};
                for (;;)
                {
                    const auto rows = sim.step ();
                    const TraceRow &r = rows.front ();
                    if (in_s1 (r.command.region))
                        return CaseOutcome{};
                    if (r.t > limit)
                    {
                        std::ostringstream msg;
                        msg.precision (12);
                        msg << "no S1 entry within " << limit << " s from rho0=" << st.rho << " psi0=" << st.psi << " on "
                            << to_string (path.kind ()) << "; at t=" << r.t << " " << state_text (r.error) << " region "
                            << to_string (r.command.region);
                        return CaseOutcome{true, false, msg.str ()};
                    }
                }
            });
            std::ostringstream detail;
            detail << "bound (|rho0| - R1)/(v_min |sin psi0|) + " << kBoundMargin * 100 << " %";
            return collect (info, out, detail.str ());
        }

        SuiteResult suite_reachability_robust (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                               const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            const Limits &l = p.limits;
            const double alpha1 = l.omega_max - l.kappa0 * l.v_min / (1.0 - l.kappa0 * p.R2);
            if (!(alpha1 > 0.0))
            {
                SuiteResult r;
                r.name = info.name;
                r.description = info.description;
                r.cases = 1;
                r.failures = 1;
                r.counterexample = "turn-rate margin alpha1 = " + std::to_string (alpha1) +
                                    " is not positive, R2 is outside its admissible range";
                return r;
            }
            const double limit = (1.0 + kBoundMargin) * kPi / alpha1 + o.dt;
            const auto paths = synthetic_paths (l.kappa0);
            Sampler gen (o.seed + 606u);
            struct Start
            {
                std::size_t path;
                double s, rho, psi;
            };
            std::vector<Start> starts;
            std::size_t rejected = 0;
            for (int cls = 0; cls < 2; ++cls)
            {
                std::size_t accepted = 0;
                std::size_t attempts = 0;
                while (accepted < o.runs && attempts < 50 * o.runs)
                {
                    ++attempts;
                    double rho = gen.uniform (-p.R2, p.R2);
                    double psi = gen.uniform (1e-6, kPi - 1e-6);
                    if (cls == 1)
                    {
                        rho = -rho;
                        psi = -psi;
                    }
                    const PathError e{rho, psi, 0.0, 0.0};
                    const Region region = classify (e, p);
                    const Region wanted = cls == 0 ? Region::S2_1 : Region::S2_3;
                    const auto crossing = region == wanted
                                              ? comparison_system_trajectory (e, p, cls == 0 ? ComparisonSystem::S21
                                                                                               : ComparisonSystem::S23)
                                              : std::nullopt;
                    if (!crossing)
                    {
                        if (region == wanted)
                            ++rejected;
                        continue;
                    }
                    const std::size_t k = starts.size ();
                    starts.push_back ({k % paths.size (), gen.uniform (0.0, paths[k % paths.size ()].total_length ()), rho, psi});
                    ++accepted;
                }
            }
            auto out = parallel_cases (starts.size (), thread_count (o), [&] (std::size_t k) {
                const Start &st = starts[k];
                const Path &path = paths[st.path];
                Simulator sim (single_vehicle (p, chi, path, pose_from_error (path, st.s, st.rho, st.psi), o.dt), false);
                for (;;)
                {
                    const auto rows = sim.step ();
                    const TraceRow &r = rows.front ();
                    const Region g = r.command.region;
                    if (in_s1 (g) || g == Region::S2_2 || g == Region::S2_4)
                        return CaseOutcome{};
                    if (r.t > limit)
                    {
                        std::ostringstream msg;
                        msg.precision (12);
                        msg << "still in " << to_string (g) << " after " << limit << " s from rho0=" << st.rho
                            << " psi0=" << st.psi << " on " << to_string (path.kind ()) << ": " << state_text (r.error);
                        return CaseOutcome{true, false, msg.str ()};
                    }
                }
            });
            auto result = collect (info, out);
            result.skipped += rejected;
            std::ostringstream detail;
            detail << "bound pi/alpha1 + " << kBoundMargin * 100 << " % = " << limit << " s; " << rejected
                   << " starts rejected (comparison trajectory leaves |rho| <= R2)";
            result.detail = detail.str ();
            return result;
        }

        SuiteResult suite_no_overtaking (const SuiteInfo &info, const CoordParams &base, const ChiFunction &chi,
                                         const VerifyOptions &o)
        {
            const CoordParams p = pure_sign (base);
            const auto paths = synthetic_paths (p.limits.kappa0);
            const std::size_t runs = std::max<std::size_t> (1, o.runs / 10);
            constexpr int vehicles = 4;
            Sampler gen (o.seed + 707u);
            struct Start
            {
                std::size_t path;
                std::vector<Pose> poses;
            };
            std::vector<Start> starts (runs);
            for (std::size_t k = 0; k < runs; ++k)
            {
                const std::size_t pi = k % 2; // the two closed circles
                const double length = paths[pi].total_length ();
                std::vector<double> gaps (vehicles);
                double total = 0.0;
                for (auto &g : gaps)
                    total += (g = gen.uniform (0.2, 1.0));
                double s = gen.uniform (0.0, length);
                starts[k].path = pi;
                for (int v = 0; v < vehicles; ++v)
                {
                    const auto [rho, psi] = gen.in_s1 (p);
                    starts[k].poses.push_back (pose_from_error (paths[pi], s, rho, psi));
                    s += gaps[static_cast<std::size_t> (v)] / total * length;
                }
            }
            auto out = parallel_cases (starts.size (), thread_count (o), [&] (std::size_t k) {
                Scenario sc = single_vehicle (p, chi, paths[starts[k].path], starts[k].poses.front (), o.dt);
                sc.uavs.clear ();
                for (int v = 0; v < vehicles; ++v)
                    sc.uavs.push_back ({v + 1, 0, starts[k].poses[static_cast<std::size_t> (v)], 0.0});
                Simulator sim (sc, false);
                const auto steps = static_cast<std::size_t> (std::llround (0.5 * o.run_duration / o.dt));
                for (std::size_t i = 0; i < steps; ++i)
                {
                    const auto rows = sim.step ();
                    for (const auto &r : rows)
                        if (!in_s1 (r.command.region))
                            return CaseOutcome{false, true, {}};
                    if (!sim.events ().empty ())
                    {
                        std::ostringstream msg;
                        msg << "event " << sim.events ().front ().event.describe () << " at t=" << sim.events ().front ().t;
                        return CaseOutcome{true, false, msg.str ()};
                    }
                }
                return CaseOutcome{};
            });
            return collect (info, out);
        }
    } // namespace

    const std::vector<std::string> &suite_names ()
    {
        static const std::vector<std::string> names = [] {
            std::vector<std::string> n;
            for (const auto &s : catalogue ())
                n.push_back (s.name);
            return n;
        }();
        return names;
    }

    std::optional<std::string> resolve_suite_name (std::string_view name)
    {
        for (const auto &s : catalogue ())
            if (s.name == name)
                return s.name;
        const auto it = aliases ().find (std::string (name));
        if (it != aliases ().end ())
            return it->second;
        return std::nullopt;
    }

    CoordParams reset_exercising_params (const CoordParams &base)
    {
        // Grid over (a, v_m) with R1 on the corner turn-rate equality; keeps the
        // feasible point where v_max can exceed the corner bound by the widest ratio.
        const Limits &l = base.limits;
        const double margin = l.omega_max - base.alpha;
        std::optional<CoordParams> best;
        double best_ratio = 1.0;
        constexpr int samples = 200;
        for (int i = 1; i < samples; ++i)
        {
            const double a = 1.5 * i / samples;
            for (int j = 1; j < samples; ++j)
            {
                const double v_m = l.v_min + (l.v_max - l.v_min) * j / samples;
                const double denom = margin * margin - v_m * v_m * l.kappa0 * l.kappa0;
                if (denom <= 0.0)
                    continue;
                CoordParams p = base;
                p.a = a;
                p.v_m = v_m;
                p.R1 = v_m * a / std::sqrt (denom) * (1.0 + 1e-9);
                if (p.R1 >= p.R2)
                    continue;
                p.k2 = p.R1 / p.a + 1.0;
                p.eps0 = std::min (base.eps0, 0.5 * a);
                if (!all_satisfied (constraint_slacks (p)))
                    continue;
                const double x = l.kappa0 * p.R1;
                const double ratio = l.v_max * (a * std::sin (a) + x * std::cos (a)) / (p.R1 * margin);
                if (ratio > best_ratio)
                {
                    best_ratio = ratio;
                    best = p;
                }
            }
        }
        return best ? *best : base;
    }

    SuiteResult run_suite (std::string_view name, const CoordParams &params, const ChiFunction &chi,
                           const VerifyOptions &options)
    {
        const auto canonical = resolve_suite_name (name);
        if (!canonical)
            throw ValidationError ("unknown verification suite '" + std::string (name) + "'");
        using Fn = SuiteResult (*) (const SuiteInfo &, const CoordParams &, const ChiFunction &, const VerifyOptions &);
        static const std::map<std::string, Fn> table = {
            {"boundary", suite_boundary},
            {"heading-rate", suite_heading_rate},
            {"invariance", suite_invariance},
            {"no-overtaking", suite_no_overtaking},
            {"reachability-box", suite_reachability_box},
            {"reachability-robust", suite_reachability_robust},
            {"reset-bound", suite_reset_bound},
            {"sliding", suite_sliding},
        };
        const auto info = std::find_if (catalogue ().begin (), catalogue ().end (),
                                        [&] (const SuiteInfo &s) { return s.name == *canonical; });
        return table.at (*canonical) (*info, params, chi, options);
    }

    std::vector<SuiteResult> run_suites (const std::vector<std::string> &names, const CoordParams &params,
                                         const ChiFunction &chi, const VerifyOptions &options)
    {
        std::vector<std::string> wanted;
        for (const auto &n : names)
        {
            const auto canonical = resolve_suite_name (n);
            if (!canonical)
                throw ValidationError ("unknown verification suite '" + n + "'");
            wanted.push_back (*canonical);
        }
        std::vector<SuiteResult> out;
        for (const auto &s : suite_names ())
            if (wanted.empty () || std::find (wanted.begin (), wanted.end (), s) != wanted.end ())
                out.push_back (run_suite (s, params, chi, options));
        return out;
    }

} // namespace cpf
