#include <cpf/bspline.hpp>
#include <cpf/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace cpf
{
    namespace
    {
        constexpr int kDegree = 3;

        // 5-point Gauss-Legendre on [-1, 1]
        constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                                   0.9061798459386640};
        constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                   0.4786286704993665, 0.2369268850561891};

        constexpr int kPiecesPerSpan = 64;

        double speed (const CubicBSpline &curve, double u) { return curve.evaluate (u).d1.norm (); }

        double gauss_piece (const CubicBSpline &curve, double a, double b)
        {
            const double half = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            double sum = 0.0;
            for (std::size_t i = 0; i < kGaussX.size (); ++i)
                sum += kGaussW[i] * speed (curve, mid + half * kGaussX[i]);
            return half * sum;
        }

        // Basis function values and first two derivatives at u for the given span.
        std::array<std::array<double, kDegree + 1>, 3> basis_derivatives (const std::vector<double> &U, std::size_t span,
                                                                         double u)
        {
            constexpr int p = kDegree;
            std::array<std::array<double, p + 1>, p + 1> ndu{};
            std::array<double, p + 1> left{}, right{};
            ndu[0][0] = 1.0;
            for (int j = 1; j <= p; ++j)
            {
                left[j] = u - U[span + 1 - j];
                right[j] = U[span + j] - u;
                double saved = 0.0;
                for (int r = 0; r < j; ++r)
                {
                    ndu[j][r] = right[r + 1] + left[j - r];
                    const double temp = ndu[r][j - 1] / ndu[j][r];
                    ndu[r][j] = saved + right[r + 1] * temp;
                    saved = left[j - r] * temp;
                }
                ndu[j][j] = saved;
            }

            std::array<std::array<double, p + 1>, 3> ders{};
            for (int j = 0; j <= p; ++j)
                ders[0][j] = ndu[j][p];

            std::array<std::array<double, p + 1>, 2> a{};
            for (int r = 0; r <= p; ++r)
            {
                int s1 = 0, s2 = 1;
                a[0][0] = 1.0;
                for (int k = 1; k <= 2; ++k)
                {
                    double d = 0.0;
                    const int rk = r - k;
                    const int pk = p - k;
                    if (r >= k)
                    {
                        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                        d = a[s2][0] * ndu[rk][pk];
                    }
                    const int j1 = rk >= -1 ? 1 : -rk;
                    const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
                    for (int j = j1; j <= j2; ++j)
                    {
                        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                        d += a[s2][j] * ndu[rk + j][pk];
                    }
                    if (r <= pk)
                    {
                        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                        d += a[s2][k] * ndu[r][pk];
                    }
                    ders[k][r] = d;
                    std::swap (s1, s2);
                }
            }
            ders[1][0] *= p;
            ders[1][1] *= p;
            ders[1][2] *= p;
            ders[1][3] *= p;
            for (int j = 0; j <= p; ++j)
                ders[2][j] *= p * (p - 1);
            return ders;
        }
    } // namespace

    CubicBSpline::CubicBSpline (std::vector<Vec2> control_points, std::vector<double> knots)
        : control_ (std::move (control_points)), knots_ (std::move (knots))
    {
        if (control_.size () < kDegree + 1 || knots_.size () != control_.size () + kDegree + 1)
            throw ValidationError ("cubic B-spline needs at least 4 control points and n+4 knots");
    }

    CubicBSpline CubicBSpline::interpolate (const std::vector<Vec2> &waypoints)
    {
        if (waypoints.size () < kDegree + 1)
            throw ValidationError ("B-spline interpolation needs at least 4 waypoints");

        const std::size_t n = waypoints.size () - 1;
        std::vector<double> chord (n + 1, 0.0);
        for (std::size_t k = 1; k <= n; ++k)
        {
            const double d = (waypoints[k] - waypoints[k - 1]).norm ();
            if (d <= 0.0)
                throw DegenerateSpline ("consecutive waypoints coincide");
            chord[k] = chord[k - 1] + d;
        }
        std::vector<double> ubar (n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            ubar[k] = chord[k] / chord[n];
        ubar[n] = 1.0;

        std::vector<double> knots (n + kDegree + 2, 0.0);
        for (std::size_t j = n + 1; j < knots.size (); ++j)
            knots[j] = 1.0;
        for (std::size_t j = 1; j + kDegree <= n; ++j)
        {
            double sum = 0.0;
            for (std::size_t i = j; i < j + kDegree; ++i)
                sum += ubar[i];
            knots[j + kDegree] = sum / kDegree;
        }

        std::vector<Vec2> placeholder (n + 1, Vec2::Zero ());
        CubicBSpline shape (placeholder, knots);
        Eigen::MatrixXd basis = Eigen::MatrixXd::Zero (static_cast<Eigen::Index> (n + 1), static_cast<Eigen::Index> (n + 1));
        for (std::size_t k = 0; k <= n; ++k)
        {
            const std::size_t span = shape.find_span (ubar[k]);
            const auto ders = basis_derivatives (knots, span, ubar[k]);
            for (int j = 0; j <= kDegree; ++j)
                basis (static_cast<Eigen::Index> (k), static_cast<Eigen::Index> (span - kDegree + j)) = ders[0][j];
        }
        Eigen::MatrixXd rhs (static_cast<Eigen::Index> (n + 1), 2);
        for (std::size_t k = 0; k <= n; ++k)
            rhs.row (static_cast<Eigen::Index> (k)) = waypoints[k].transpose ();
        const Eigen::MatrixXd solved = basis.partialPivLu ().solve (rhs);

        std::vector<Vec2> control (n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            control[k] = solved.row (static_cast<Eigen::Index> (k)).transpose ();
        // endpoints are interpolated exactly by construction of a clamped spline
        control.front () = waypoints.front ();
        control.back () = waypoints.back ();
        return CubicBSpline (std::move (control), std::move (knots));
    }

    std::size_t CubicBSpline::find_span (double u) const
    {
        const std::size_t n = control_.size () - 1;
        if (u >= knots_[n + 1])
            return n;
        if (u <= knots_[kDegree])
            return kDegree;
        const auto it = std::upper_bound (knots_.begin () + kDegree, knots_.begin () + static_cast<long> (n) + 1, u);
        return static_cast<std::size_t> (it - knots_.begin ()) - 1;
    }

    CurveSample CubicBSpline::evaluate (double u) const
    {
        u = std::clamp (u, 0.0, 1.0);
        const std::size_t span = find_span (u);
        const auto ders = basis_derivatives (knots_, span, u);
        CurveSample out{Vec2::Zero (), Vec2::Zero (), Vec2::Zero ()};
        for (int j = 0; j <= kDegree; ++j)
        {
            const Vec2 &cp = control_[span - kDegree + j];
            out.point += ders[0][j] * cp;
            out.d1 += ders[1][j] * cp;
            out.d2 += ders[2][j] * cp;
        }
        return out;
    }

    double arc_length (const CubicBSpline &curve, double u0, double u1)
    {
        if (u1 < u0)
            return -arc_length (curve, u1, u0);
        const auto &U = curve.knots ();
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < U.size (); ++i)
        {
            const double lo = std::max (U[i], u0);
            const double hi = std::min (U[i + 1], u1);
            if (!(hi > lo))
                continue;
            const int pieces = std::max (1, static_cast<int> (std::ceil (kPiecesPerSpan * (hi - lo) / (U[i + 1] - U[i]))));
            const double step = (hi - lo) / pieces;
            for (int k = 0; k < pieces; ++k)
                total += gauss_piece (curve, lo + k * step, k + 1 == pieces ? hi : lo + (k + 1) * step);
        }
        return total;
    }

    ArcLengthTable::ArcLengthTable (const CubicBSpline &curve, double resolution) : resolution_ (resolution)
    {
        if (!(resolution > 0.0))
            throw ValidationError ("arc-length table resolution must be positive");

        const double total = arc_length (curve, 0.0, 1.0);
        const double min_speed = 1e-9 * total;

        u_nodes_.reserve (static_cast<std::size_t> (total / resolution) + 2);
        u_nodes_.push_back (0.0);
        double u_prev = 0.0;
        for (;;)
        {
            const double v0 = speed (curve, u_prev);
            if (v0 < min_speed)
                throw DegenerateSpline ("B-spline derivative vanishes");
            if (total - static_cast<double> (u_nodes_.size () - 1) * resolution <= resolution)
                break;
            double u = u_prev + resolution / v0;
            for (int it = 0; it < 8; ++it)
            {
                const double f = gauss_piece (curve, u_prev, u) - resolution;
                const double df = speed (curve, u);
                if (df < min_speed)
                    throw DegenerateSpline ("B-spline derivative vanishes");
                const double du = f / df;
                u -= du;
                if (std::abs (du) < 1e-15)
                    break;
            }
            u_nodes_.push_back (u);
            u_prev = u;
        }
        const double tail = arc_length (curve, u_prev, 1.0);
        length_ = static_cast<double> (u_nodes_.size () - 1) * resolution_ + tail;
        u_nodes_.push_back (1.0);
    }

    double ArcLengthTable::u_at (double s) const
    {
        if (s <= 0.0)
            return 0.0;
        if (s >= length_)
            return 1.0;
        const std::size_t last = u_nodes_.size () - 2;
        std::size_t k = static_cast<std::size_t> (s / resolution_);
        k = std::min (k, last);
        const double s0 = static_cast<double> (k) * resolution_;
        const double s1 = (k == last) ? length_ : s0 + resolution_;
        const double w = (s - s0) / (s1 - s0);
        return u_nodes_[k] + w * (u_nodes_[k + 1] - u_nodes_[k]);
    }

    double ArcLengthTable::s_at (double u) const
    {
        if (u <= 0.0)
            return 0.0;
        if (u >= 1.0)
            return length_;
        const auto it = std::upper_bound (u_nodes_.begin (), u_nodes_.end (), u);
        const std::size_t k = static_cast<std::size_t> (it - u_nodes_.begin ()) - 1;
        const std::size_t last = u_nodes_.size () - 2;
        const double s0 = static_cast<double> (k) * resolution_;
        const double s1 = (k == last) ? length_ : s0 + resolution_;
        const double w = (u - u_nodes_[k]) / (u_nodes_[k + 1] - u_nodes_[k]);
        return s0 + w * (s1 - s0);
    }

} // namespace cpf
