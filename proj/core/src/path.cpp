#include <cpf/bspline.hpp>
#include <cpf/errors.hpp>
#include <cpf/path.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cpf
{
    namespace
    {
        constexpr double kTableResolution = 0.1; // m
        constexpr double kGoldenTolerance = 1e-8; // m
        constexpr double kHintWindow = 8.0;       // m
        constexpr double kHintStride = 1.0;       // m
        constexpr double kTieTolerance = 1e-6;    // m

        double floor_mod (double x, double m)
        {
            double r = std::fmod (x, m);
            if (r < 0.0)
                r += m;
            if (r >= m)
                r -= m;
            return r;
        }

        template <typename F> double golden_section (F &&cost, double lo, double hi, double tol)
        {
            constexpr double inv_phi = 0.6180339887498949;
            double x1 = hi - inv_phi * (hi - lo);
            double x2 = lo + inv_phi * (hi - lo);
            double f1 = cost (x1);
            double f2 = cost (x2);
            while (hi - lo > tol)
            {
                if (f1 <= f2)
                {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = cost (x1);
                }
                else
                {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = cost (x2);
                }
            }
            return 0.5 * (lo + hi);
        }
    } // namespace

    struct Path::SplineData
    {
        CubicBSpline curve;
        ArcLengthTable table;
        Vec2 start_point;
        Vec2 start_tangent;
        Vec2 end_point;
        Vec2 end_tangent;

        explicit SplineData (CubicBSpline c)
            : curve (std::move (c)), table (curve, kTableResolution), start_point (curve.point (0.0)),
              start_tangent (curve.evaluate (0.0).d1.normalized ()), end_point (curve.point (1.0)),
              end_tangent (curve.evaluate (1.0).d1.normalized ())
        {
        }

        [[nodiscard]] Vec2 point_at (double s) const
        {
            if (s < 0.0)
                return start_point + s * start_tangent;
            if (s > table.length ())
                return end_point + (s - table.length ()) * end_tangent;
            return curve.point (table.u_at (s));
        }
    };

    std::string_view to_string (PathKind kind)
    {
        switch (kind)
        {
        case PathKind::circle:
            return "circle";
        case PathKind::line:
            return "line";
        case PathKind::bspline:
            return "bspline";
        }
        return "unknown";
    }

    Path::Path (std::variant<CircleGeom, LineGeom, SplineGeom> geom, double kappa0) : geom_ (std::move (geom)), kappa0_ (kappa0)
    {
        if (!(kappa0_ > 0.0))
            throw ValidationError ("curvature bound kappa0 must be positive");
    }

    Path Path::circle (const Vec2 &center, double radius, Direction direction, double kappa0)
    {
        if (!(radius > 0.0))
            throw ValidationError ("circle radius must be positive");
        if (1.0 / radius >= kappa0)
            throw CurvatureBoundExceeded ("circle curvature " + std::to_string (1.0 / radius) + " is not below kappa0 " +
                                          std::to_string (kappa0));
        const double sense = direction == Direction::counterclockwise ? 1.0 : -1.0;
        return Path (CircleGeom{center, radius, sense}, kappa0);
    }

    Path Path::line (const Vec2 &origin, double heading, double horizon, double kappa0)
    {
        if (!(horizon > 0.0))
            throw ValidationError ("line horizon must be positive");
        return Path (LineGeom{origin, Vec2 (std::cos (heading), std::sin (heading)), horizon}, kappa0);
    }

    Path Path::bspline (const std::vector<Vec2> &waypoints, double kappa0)
    {
        auto data = std::make_shared<const SplineData> (CubicBSpline::interpolate (waypoints));
        Path path (SplineGeom{std::move (data), Vec2::Zero ()}, kappa0);
        const double peak = path.max_abs_curvature (kTableResolution);
        if (peak >= kappa0)
            throw CurvatureBoundExceeded ("B-spline curvature " + std::to_string (peak) + " is not below kappa0 " +
                                          std::to_string (kappa0));
        return path;
    }

    Path Path::translated (const Vec2 &offset) const
    {
        Path copy = *this;
        std::visit (
            [&] (auto &g) {
                using G = std::decay_t<decltype (g)>;
                if constexpr (std::is_same_v<G, CircleGeom>)
                    g.center += offset;
                else if constexpr (std::is_same_v<G, LineGeom>)
                    g.origin += offset;
                else
                    g.offset += offset;
            },
            copy.geom_);
        return copy;
    }

    PathKind Path::kind () const
    {
        switch (geom_.index ())
        {
        case 0:
            return PathKind::circle;
        case 1:
            return PathKind::line;
        default:
            return PathKind::bspline;
        }
    }

    double Path::total_length () const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
            return 2.0 * kPi * c->radius;
        if (const auto *l = std::get_if<LineGeom> (&geom_))
            return l->horizon;
        return std::get<SplineGeom> (geom_).data->table.length ();
    }

    double Path::wrap_s (double s) const { return closed () ? floor_mod (s, total_length ()) : s; }

    double Path::arc_distance (double s_from, double s_to) const
    {
        if (closed ())
            return floor_mod (s_to - s_from, total_length ());
        return s_to - s_from;
    }

    double Path::signed_arc_difference (double s_from, double s_to) const
    {
        if (!closed ())
            return s_to - s_from;
        const double c = total_length ();
        return floor_mod (s_to - s_from + 0.5 * c, c) - 0.5 * c;
    }

    Vec2 Path::point_at (double s) const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
        {
            const double phi = c->sense * wrap_s (s) / c->radius;
            return c->center + c->radius * Vec2 (std::cos (phi), std::sin (phi));
        }
        if (const auto *l = std::get_if<LineGeom> (&geom_))
            return l->origin + s * l->direction;
        const auto &g = std::get<SplineGeom> (geom_);
        return g.data->point_at (s) + g.offset;
    }

    double Path::tangent_angle_at (double s) const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
            return wrap_angle (c->sense * wrap_s (s) / c->radius + c->sense * 0.5 * kPi);
        if (const auto *l = std::get_if<LineGeom> (&geom_))
            return std::atan2 (l->direction.y (), l->direction.x ());
        const auto &d = *std::get<SplineGeom> (geom_).data;
        Vec2 t;
        if (s <= 0.0)
            t = d.start_tangent;
        else if (s >= d.table.length ())
            t = d.end_tangent;
        else
            t = d.curve.evaluate (d.table.u_at (s)).d1;
        return std::atan2 (t.y (), t.x ());
    }

    Vec2 Path::tangent_at (double s) const
    {
        const double angle = tangent_angle_at (s);
        return {std::cos (angle), std::sin (angle)};
    }

    double Path::curvature_at (double s) const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
            return c->sense / c->radius;
        if (std::holds_alternative<LineGeom> (geom_))
            return 0.0;
        const auto &d = *std::get<SplineGeom> (geom_).data;
        if (s < 0.0 || s > d.table.length ())
            return 0.0;
        const CurveSample cs = d.curve.evaluate (d.table.u_at (s));
        const double speed = cs.d1.norm ();
        if (speed <= 0.0)
            throw DegenerateSpline ("B-spline derivative vanishes");
        return cross (cs.d1, cs.d2) / (speed * speed * speed);
    }

    double Path::max_abs_curvature (double step) const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
            return 1.0 / c->radius;
        if (std::holds_alternative<LineGeom> (geom_))
            return 0.0;
        const double length = total_length ();
        double peak = 0.0;
        const auto n = static_cast<std::size_t> (std::ceil (length / step));
        for (std::size_t k = 0; k <= n; ++k)
            peak = std::max (peak, std::abs (curvature_at (std::min (static_cast<double> (k) * step, length))));
        return peak;
    }

    Projection Path::make_projection (double s, const Vec2 &query) const
    {
        Projection p;
        p.s = s;
        p.point = point_at (s);
        p.tangent_angle = tangent_angle_at (s);
        p.curvature = curvature_at (s);
        p.rho = cross (Vec2 (std::cos (p.tangent_angle), std::sin (p.tangent_angle)), query - p.point);
        return p;
    }

    Projection Path::project (const Vec2 &point, std::optional<double> hint_s) const
    {
        if (const auto *c = std::get_if<CircleGeom> (&geom_))
        {
            const Vec2 d = point - c->center;
            const double r = d.norm ();
            double s;
            if (r <= 1e-12 * c->radius)
            {
                if (!hint_s)
                    throw ProjectionAmbiguous ("query point coincides with the circle center");
                s = wrap_s (*hint_s);
            }
            else
            {
                s = wrap_s (c->sense * std::atan2 (d.y (), d.x ()) * c->radius);
            }
            Projection p = make_projection (s, point);
            p.rho = c->sense * (c->radius - r);
            return p;
        }
        if (const auto *l = std::get_if<LineGeom> (&geom_))
        {
            const Vec2 d = point - l->origin;
            Projection p = make_projection (d.dot (l->direction), point);
            p.rho = cross (l->direction, d);
            return p;
        }
        return project_spline (std::get<SplineGeom> (geom_), point, hint_s);
    }

    Projection Path::project_spline (const SplineGeom &g, const Vec2 &world_point, std::optional<double> hint) const
    {
        const SplineData &d = *g.data;
        const Vec2 q = world_point - g.offset;
        const double length = d.table.length ();
        const auto dist = [&] (double s) { return (d.point_at (s) - q).norm (); };

        struct Candidate
        {
            double s;
            double u;
            double distance;
        };

        // Refines a sampled minimum bracketed by [lo, hi] in the linearly extended domain.
        const auto refine = [&] (double lo, double hi) -> Candidate {
            const double s_star = golden_section (dist, lo, hi, kGoldenTolerance);
            if (s_star <= 0.0)
            {
                const double s = std::min (0.0, (q - d.start_point).dot (d.start_tangent));
                return {s, 0.0, dist (s)};
            }
            if (s_star >= length)
            {
                const double s = length + std::max (0.0, (q - d.end_point).dot (d.end_tangent));
                return {s, 1.0, dist (s)};
            }
            double u = d.table.u_at (s_star);
            for (int it = 0; it < 8; ++it)
            {
                const CurveSample cs = d.curve.evaluate (u);
                const Vec2 e = cs.point - q;
                const double f = cs.d1.dot (e);
                const double fp = cs.d2.dot (e) + cs.d1.squaredNorm ();
                if (!(fp > 0.0))
                    break;
                const double u_next = std::clamp (u - f / fp, 0.0, 1.0);
                const bool done = std::abs (u_next - u) < 1e-16;
                u = u_next;
                if (done)
                    break;
            }
            return {d.table.s_at (u), u, (d.curve.point (u) - q).norm ()};
        };

        const auto scan = [&] (double lo, double hi, double stride, bool all_minima) {
            const auto n = static_cast<std::size_t> (std::max (1.0, std::ceil ((hi - lo) / stride)));
            std::vector<double> s_k (n + 1), d_k (n + 1);
            for (std::size_t k = 0; k <= n; ++k)
            {
                s_k[k] = std::min (lo + static_cast<double> (k) * stride, hi);
                d_k[k] = dist (s_k[k]);
            }
            const double best_sample = *std::min_element (d_k.begin (), d_k.end ());
            std::vector<Candidate> out;
            for (std::size_t k = 0; k <= n; ++k)
            {
                const bool left_ok = k == 0 || d_k[k] <= d_k[k - 1];
                const bool right_ok = k == n || d_k[k] <= d_k[k + 1];
                if (!left_ok || !right_ok)
                    continue;
                if (all_minima ? d_k[k] > best_sample + 2.0 * stride : d_k[k] > best_sample)
                    continue;
                const double b_lo = k == 0 ? s_k[0] - stride : s_k[k - 1];
                const double b_hi = k == n ? s_k[n] + stride : s_k[k + 1];
                out.push_back (refine (b_lo, b_hi));
                if (!all_minima)
                    break;
            }
            return out;
        };

        std::vector<Candidate> candidates;
        if (hint)
            candidates = scan (*hint - kHintWindow, *hint + kHintWindow, kHintStride, false);
        else
            candidates = scan (0.0, length, std::min (10.0, 0.1 / kappa0_), true);

        std::sort (candidates.begin (), candidates.end (), [] (const Candidate &a, const Candidate &b) {
            return a.distance < b.distance || (a.distance == b.distance && a.s < b.s);
        });
        const Candidate &best = candidates.front ();

        Projection p;
        p.s = best.s;
        if (best.s <= 0.0 || best.s >= length)
        {
            const bool before = best.s <= 0.0;
            const Vec2 &t = before ? d.start_tangent : d.end_tangent;
            p.point = d.point_at (best.s);
            p.tangent_angle = std::atan2 (t.y (), t.x ());
            p.curvature = 0.0;
            p.rho = cross (t, q - p.point);
        }
        else
        {
            const CurveSample cs = d.curve.evaluate (best.u);
            const double speed = cs.d1.norm ();
            const Vec2 t = cs.d1 / speed;
            p.point = cs.point;
            p.tangent_angle = std::atan2 (t.y (), t.x ());
            p.curvature = cross (cs.d1, cs.d2) / (speed * speed * speed);
            p.rho = cross (t, q - p.point);
        }
        p.point += g.offset;

        if (!hint && std::abs (p.rho) >= 1.0 / kappa0_)
        {
            for (std::size_t k = 1; k < candidates.size (); ++k)
            {
                const Candidate &other = candidates[k];
                if (other.distance - best.distance > kTieTolerance)
                    break;
                if (std::abs (other.s - best.s) > 1.0)
                    throw ProjectionAmbiguous ("closest projection is not unique (s = " + std::to_string (best.s) +
                                               " and s = " + std::to_string (other.s) + ")");
            }
        }
        return p;
    }

} // namespace cpf
