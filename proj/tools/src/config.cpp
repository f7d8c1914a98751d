#include "config.hpp"

#include <cpf/errors.hpp>
#include <cpf/geodesy.hpp>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace cpf::cli
{
    namespace
    {
        [[noreturn]] void fail (const std::string &where, const std::string &what)
        {
            throw ValidationError (fmt::format ("config {}: {}", where, what));
        }

        std::string child (const std::string &where, const std::string &key)
        {
            return where.empty () ? key : where + "." + key;
        }

        std::string item (const std::string &where, std::size_t i) { return fmt::format ("{}[{}]", where, i); }

        void require_map (const YAML::Node &node, const std::string &where)
        {
            if (!node.IsMap ())
                fail (where, "expected a mapping");
        }

        void check_keys (const YAML::Node &node, const std::string &where, std::initializer_list<std::string_view> allowed)
        {
            require_map (node, where);
            for (const auto &kv : node)
            {
                const auto key = kv.first.as<std::string> ();
                if (std::find (allowed.begin (), allowed.end (), key) == allowed.end ())
                    fail (where.empty () ? "<root>" : where, fmt::format ("unknown key '{}'", key));
            }
        }

        template <typename T> T as (const YAML::Node &node, const std::string &where)
        {
            try
            {
                return node.as<T> ();
            }
            catch (const YAML::Exception &)
            {
                fail (where, "value has the wrong type");
            }
        }

        template <typename T> std::optional<T> optional_value (const YAML::Node &parent, std::string_view key, const std::string &where)
        {
            const YAML::Node node = parent[std::string (key)];
            if (!node)
                return std::nullopt;
            return as<T> (node, child (where, std::string (key)));
        }

        template <typename T> T value_or (const YAML::Node &parent, std::string_view key, const std::string &where, T fallback)
        {
            return optional_value<T> (parent, key, where).value_or (fallback);
        }

        template <typename T> T required (const YAML::Node &parent, std::string_view key, const std::string &where)
        {
            auto v = optional_value<T> (parent, key, where);
            if (!v)
                fail (where, fmt::format ("missing required key '{}'", key));
            return *v;
        }

        Vec2 vec2 (const YAML::Node &node, const std::string &where)
        {
            if (!node.IsSequence () || node.size () != 2)
                fail (where, "expected a two-element list [x, y]");
            return {as<double> (node[0], item (where, 0)), as<double> (node[1], item (where, 1))};
        }

        double positive (double v, const std::string &where)
        {
            if (!(v > 0.0))
                fail (where, "must be positive");
            return v;
        }

        Limits parse_limits (const YAML::Node &node, const std::string &where)
        {
            check_keys (node, where, {"v_min", "v_max", "omega_max", "kappa0"});
            Limits l;
            l.v_min = positive (required<double> (node, "v_min", where), child (where, "v_min"));
            l.v_max = positive (required<double> (node, "v_max", where), child (where, "v_max"));
            l.omega_max = positive (required<double> (node, "omega_max", where), child (where, "omega_max"));
            l.kappa0 = positive (required<double> (node, "kappa0", where), child (where, "kappa0"));
            if (!(l.v_min < l.v_max))
                fail (where, "v_min must be below v_max");
            return l;
        }

        void parse_gains (const YAML::Node &node, const std::string &where, ParamsSection &out)
        {
            CoordParams &p = out.params;
            p.alpha = positive (value_or (node, "alpha", where, p.alpha), child (where, "alpha"));
            const double c = value_or (node, "c", where, p.c);
            if (!(c > 0.0))
                fail (child (where, "c"), "must be > 0 (the along-path speed margin is strict)");
            p.c = c;
            p.k1 = value_or (node, "k1", where, p.k1);
            p.k3 = value_or (node, "k3", where, p.k3);
            out.k2 = optional_value<double> (node, "k2", where);
            out.R2 = optional_value<double> (node, "R2", where);
            p.eps0 = value_or (node, "eps0", where, p.eps0);
            p.lambda = value_or (node, "lambda", where, p.lambda);
            p.delta1 = value_or (node, "delta1", where, p.delta1);
            p.delta2 = value_or (node, "delta2", where, p.delta2);
            p.L = value_or (node, "L", where, p.L);
            p.sign_epsilon = value_or (node, "sign_epsilon", where, p.sign_epsilon);
            if (p.sign_epsilon < 0.0)
                fail (child (where, "sign_epsilon"), "must be non-negative (0 selects the pure sign)");
        }

        ParamsSection parse_params (const YAML::Node &node, const std::string &where)
        {
            check_keys (node, where,
                        {"a", "R1", "v_m", "R2", "alpha", "c", "k1", "k2", "k3", "eps0", "lambda", "delta1", "delta2", "L",
                         "sign_epsilon"});
            ParamsSection out;
            out.params.a = required<double> (node, "a", where);
            out.params.R1 = required<double> (node, "R1", where);
            out.params.v_m = required<double> (node, "v_m", where);
            parse_gains (node, where, out);
            return out;
        }

        ParamsSection parse_design (const YAML::Node &node, const std::string &where)
        {
            check_keys (node, where,
                        {"alpha", "c", "k1", "k3", "R2", "eps0", "lambda", "delta1", "delta2", "L", "sign_epsilon", "grid_r",
                         "zoom_levels", "zoom_grid", "bisection_steps"});
            ParamsSection out;
            out.designed = true;
            parse_gains (node, where, out);
            DesignOptions &d = out.design_options;
            d.grid_r = value_or (node, "grid_r", where, d.grid_r);
            d.zoom_levels = value_or (node, "zoom_levels", where, d.zoom_levels);
            d.zoom_grid = value_or (node, "zoom_grid", where, d.zoom_grid);
            d.bisection_steps = value_or (node, "bisection_steps", where, d.bisection_steps);
            if (d.grid_r < 2 || d.zoom_levels < 0 || d.zoom_grid < 2 || d.bisection_steps < 1)
                fail (where, "grid sizes must be at least 2, zoom_levels non-negative and bisection_steps positive");
            return out;
        }

        ChiSection parse_chi (const YAML::Node &node, const std::string &where)
        {
            check_keys (node, where, {"kind", "inner_slope", "outer_slope", "slope"});
            ChiSection c;
            const auto kind = required<std::string> (node, "kind", where);
            if (kind == "derived")
            {
                c.kind = ChiKind::derived;
                if (node["inner_slope"] || node["outer_slope"] || node["slope"])
                    fail (where, "the derived kind takes no slopes");
            }
            else if (kind == "piecewise")
            {
                c.kind = ChiKind::piecewise;
                c.inner_slope = required<double> (node, "inner_slope", where);
                c.outer_slope = required<double> (node, "outer_slope", where);
                if (node["slope"])
                    fail (where, "piecewise takes inner_slope and outer_slope");
            }
            else if (kind == "linear")
            {
                c.kind = ChiKind::linear;
                c.slope = required<double> (node, "slope", where);
                if (node["inner_slope"] || node["outer_slope"])
                    fail (where, "linear takes a single slope");
            }
            else
                fail (child (where, "kind"), "expected derived, piecewise or linear");
            return c;
        }

        Path parse_path (const YAML::Node &node, const std::string &where, const std::vector<Path> &earlier, double kappa0)
        {
            require_map (node, where);
            const auto type = required<std::string> (node, "type", where);
            Path path = [&] {
                if (type == "circle")
                {
                    check_keys (node, where, {"type", "center", "radius", "direction", "translate"});
                    const auto dir = value_or<std::string> (node, "direction", where, "counterclockwise");
                    if (dir != "counterclockwise" && dir != "clockwise")
                        fail (child (where, "direction"), "expected counterclockwise or clockwise");
                    const YAML::Node center = node["center"];
                    return Path::circle (center ? vec2 (center, child (where, "center")) : Vec2::Zero (),
                                         required<double> (node, "radius", where),
                                         dir == "clockwise" ? Direction::clockwise : Direction::counterclockwise, kappa0);
                }
                if (type == "line")
                {
                    check_keys (node, where, {"type", "origin", "heading", "length", "translate"});
                    const YAML::Node origin = node["origin"];
                    return Path::line (origin ? vec2 (origin, child (where, "origin")) : Vec2::Zero (),
                                       required<double> (node, "heading", where),
                                       positive (value_or (node, "length", where, 1e5), child (where, "length")), kappa0);
                }
                if (type == "bspline")
                {
                    check_keys (node, where, {"type", "waypoints", "waypoints_lonlat", "geo_origin", "translate"});
                    const YAML::Node xy = node["waypoints"];
                    const YAML::Node geo = node["waypoints_lonlat"];
                    if (bool (xy) == bool (geo))
                        fail (where, "give exactly one of waypoints (m) or waypoints_lonlat (deg)");
                    std::vector<Vec2> points;
                    if (xy)
                    {
                        if (!xy.IsSequence ())
                            fail (child (where, "waypoints"), "expected a list of [x, y]");
                        for (std::size_t i = 0; i < xy.size (); ++i)
                            points.push_back (vec2 (xy[i], item (child (where, "waypoints"), i)));
                    }
                    else
                    {
                        const auto w = child (where, "waypoints_lonlat");
                        if (!geo.IsSequence () || geo.size () == 0)
                            fail (w, "expected a list of [lon, lat]");
                        const Vec2 first = vec2 (geo[0], item (w, 0));
                        const Vec2 o = node["geo_origin"] ? vec2 (node["geo_origin"], child (where, "geo_origin")) : first;
                        const GeoOrigin origin{o.x (), o.y ()};
                        for (std::size_t i = 0; i < geo.size (); ++i)
                        {
                            const Vec2 ll = vec2 (geo[i], item (w, i));
                            points.push_back (lonlat_to_local (ll.x (), ll.y (), origin));
                        }
                    }
                    return Path::bspline (points, kappa0);
                }
                if (type == "copy")
                {
                    check_keys (node, where, {"type", "of", "translate"});
                    const auto of = required<std::size_t> (node, "of", where);
                    if (of >= earlier.size ())
                        fail (child (where, "of"), "must name an earlier path index");
                    return earlier[of];
                }
                fail (child (where, "type"), "expected circle, line, bspline or copy");
            }();
            if (const YAML::Node t = node["translate"])
                path = path.translated (vec2 (t, child (where, "translate")));
            return path;
        }

        UavSpec parse_uav (const YAML::Node &node, const std::string &where, const std::vector<Path> &paths)
        {
            check_keys (node, where, {"id", "path", "pose", "error", "join_time"});
            UavSpec u;
            u.id = required<int> (node, "id", where);
            if (u.id < 1)
                fail (child (where, "id"), "must be a positive integer");
            u.path_index = value_or<std::size_t> (node, "path", where, 0);
            if (u.path_index >= paths.size ())
                fail (child (where, "path"), "refers to a missing path");
            u.join_time = value_or (node, "join_time", where, 0.0);
            const YAML::Node pose = node["pose"];
            const YAML::Node err = node["error"];
            if (bool (pose) == bool (err))
                fail (where, "give exactly one of pose [x, y, theta] or error {s, rho, psi}");
            if (pose)
            {
                const auto w = child (where, "pose");
                if (!pose.IsSequence () || pose.size () != 3)
                    fail (w, "expected [x, y, theta]");
                u.initial = {as<double> (pose[0], item (w, 0)), as<double> (pose[1], item (w, 1)),
                             as<double> (pose[2], item (w, 2))};
            }
            else
            {
                const auto w = child (where, "error");
                check_keys (err, w, {"s", "rho", "psi"});
                u.initial = pose_from_error (paths[u.path_index], required<double> (err, "s", w), required<double> (err, "rho", w),
                                             required<double> (err, "psi", w));
            }
            return u;
        }

        void parse_output (const YAML::Node &node, const std::string &where, OutputSection &o)
        {
            check_keys (node, where, {"dir", "trace", "metrics", "plot", "plot_stride", "params_fragment", "verify_report"});
            o.dir = value_or<std::string> (node, "dir", where, o.dir.string ());
            o.trace = value_or (node, "trace", where, o.trace);
            o.metrics = value_or (node, "metrics", where, o.metrics);
            o.plot = value_or (node, "plot", where, o.plot);
            o.params_fragment = value_or (node, "params_fragment", where, o.params_fragment);
            o.verify_report = value_or (node, "verify_report", where, o.verify_report);
            o.plot_stride = value_or (node, "plot_stride", where, o.plot_stride);
            if (o.plot_stride == 0)
                fail (child (where, "plot_stride"), "must be at least 1");
        }

        void parse_verify (const YAML::Node &node, const std::string &where, VerifyOptions &v)
        {
            check_keys (node, where, {"seed", "runs", "run_duration", "samples", "boundary_samples", "dt"});
            v.seed = value_or (node, "seed", where, v.seed);
            v.runs = value_or (node, "runs", where, v.runs);
            v.run_duration = positive (value_or (node, "run_duration", where, v.run_duration), child (where, "run_duration"));
            v.samples = value_or (node, "samples", where, v.samples);
            v.boundary_samples = value_or (node, "boundary_samples", where, v.boundary_samples);
            v.dt = positive (value_or (node, "dt", where, v.dt), child (where, "dt"));
        }

        void parse_escape (const YAML::Node &node, const std::string &where, Config &c)
        {
            check_keys (node, where,
                        {"eps0", "heading_samples", "lateral_samples", "control_grid", "path_curvature", "dt", "horizon"});
            EscapeDemoOptions &e = c.escape;
            c.escape_eps0 = optional_value<double> (node, "eps0", where);
            e.heading_samples = value_or (node, "heading_samples", where, e.heading_samples);
            e.lateral_samples = value_or (node, "lateral_samples", where, e.lateral_samples);
            e.control_grid = value_or (node, "control_grid", where, e.control_grid);
            e.path_curvature = value_or (node, "path_curvature", where, e.path_curvature);
            e.dt = positive (value_or (node, "dt", where, e.dt), child (where, "dt"));
            e.horizon = positive (value_or (node, "horizon", where, e.horizon), child (where, "horizon"));
        }

        Config parse_document (const YAML::Node &root, const std::filesystem::path &source)
        {
            check_keys (root, "",
                        {"name", "limits", "params", "design", "chi", "paths", "uavs", "topology", "pre_neighbors",
                         "reference_s", "duration", "dt", "threads", "output", "verify", "escape_demo"});
            Config c;
            c.source = source;
            c.name = value_or<std::string> (root, "name", "", source.stem ().string ());
            if (!root["limits"])
                fail ("<root>", "missing required key 'limits'");
            c.limits = parse_limits (root["limits"], "limits");

            const YAML::Node params = root["params"];
            const YAML::Node design = root["design"];
            if (params && design)
                fail ("<root>", "give either params or design, not both");
            if (params)
                c.params = parse_params (params, "params");
            else if (design)
                c.params = parse_design (design, "design");
            else
                c.params.designed = true;
            c.params.params.limits = c.limits;

            if (const YAML::Node n = root["chi"])
                c.chi = parse_chi (n, "chi");

            if (const YAML::Node n = root["paths"])
            {
                if (!n.IsSequence ())
                    fail ("paths", "expected a list");
                for (std::size_t i = 0; i < n.size (); ++i)
                    c.paths.push_back (parse_path (n[i], item ("paths", i), c.paths, c.limits.kappa0));
            }
            if (const YAML::Node n = root["uavs"])
            {
                if (!n.IsSequence ())
                    fail ("uavs", "expected a list");
                for (std::size_t i = 0; i < n.size (); ++i)
                    c.uavs.push_back (parse_uav (n[i], item ("uavs", i), c.paths));
            }

            const auto topology = value_or<std::string> (root, "topology", "", "cyclic");
            if (topology == "cyclic")
                c.topology = Topology::cyclic_sequence;
            else if (topology == "tree")
                c.topology = Topology::tree;
            else
                fail ("topology", "expected cyclic or tree");
            if (const YAML::Node n = root["pre_neighbors"])
            {
                require_map (n, "pre_neighbors");
                for (const auto &kv : n)
                    c.pre_neighbors[as<int> (kv.first, "pre_neighbors")] = as<int> (kv.second, "pre_neighbors");
            }

            c.reference_s = value_or (root, "reference_s", "", c.reference_s);
            c.duration = value_or (root, "duration", "", c.duration);
            if (c.duration < 0.0)
                fail ("duration", "must be non-negative");
            c.dt = positive (value_or (root, "dt", "", c.dt), "dt");
            c.threads = value_or (root, "threads", "", c.threads);
            if (c.threads < 1)
                fail ("threads", "must be at least 1");
            if (const YAML::Node n = root["output"])
                parse_output (n, "output", c.output);
            if (const YAML::Node n = root["verify"])
                parse_verify (n, "verify", c.verify);
            if (const YAML::Node n = root["escape_demo"])
                parse_escape (n, "escape_demo", c);
            return c;
        }
    } // namespace

    Config parse_config (const std::string &text, const std::filesystem::path &source)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load (text);
        }
        catch (const YAML::Exception &ex)
        {
            throw ValidationError (fmt::format ("config {}: {}", source.string (), ex.what ()));
        }
        if (root.IsNull ())
            root = YAML::Node (YAML::NodeType::Map);
        return parse_document (root, source);
    }

    Config load_config (const std::filesystem::path &file)
    {
        std::ifstream in (file);
        if (!in)
            throw ValidationError ("cannot read config file " + file.string ());
        std::ostringstream text;
        text << in.rdbuf ();
        return parse_config (text.str (), file);
    }

    void apply_overrides (Config &config, const Overrides &o)
    {
        if (o.out)
            config.output.dir = *o.out;
        if (o.dt)
        {
            if (!(*o.dt > 0.0))
                throw ValidationError ("--dt must be positive");
            config.dt = *o.dt;
            config.verify.dt = *o.dt;
            config.escape.dt = *o.dt;
        }
        if (o.duration)
        {
            if (!(*o.duration >= 0.0))
                throw ValidationError ("--duration must be non-negative");
            config.duration = *o.duration;
        }
        if (o.seed)
            config.verify.seed = *o.seed;
        if (o.threads)
        {
            if (*o.threads < 1)
                throw ValidationError ("--threads must be at least 1");
            config.threads = *o.threads;
            config.verify.threads = *o.threads;
            config.escape.threads = *o.threads;
        }
    }

    CoordParams resolve_params (const Config &config)
    {
        const ParamsSection &section = config.params;
        CoordParams p = section.params;
        p.limits = config.limits;
        if (section.designed)
        {
            const DesignResult d = design_coordination_set (config.limits, p.c, p.alpha, section.design_options);
            CoordParams made = make_params (config.limits, d, p.c, p.alpha, p.L);
            made.k1 = p.k1;
            made.k3 = p.k3;
            made.eps0 = p.eps0;
            made.lambda = p.lambda;
            made.delta1 = p.delta1;
            made.delta2 = p.delta2;
            made.sign_epsilon = p.sign_epsilon;
            p = made;
        }
        else
        {
            p.k2 = p.R1 / p.a + 1.0;
            p.R2 = default_R2 (config.limits);
        }
        if (section.k2)
            p.k2 = *section.k2;
        if (section.R2)
            p.R2 = *section.R2;
        return p;
    }

    ChiFunction resolve_chi (const Config &config, const CoordParams &params)
    {
        if (!config.chi)
            return ChiFunction::derived (params);
        switch (config.chi->kind)
        {
        case ChiKind::piecewise:
            return ChiFunction::piecewise (params, config.chi->inner_slope, config.chi->outer_slope);
        case ChiKind::linear:
            return ChiFunction::linear (params, config.chi->slope);
        case ChiKind::derived:
            break;
        }
        return ChiFunction::derived (params);
    }

    Scenario build_scenario (const Config &config, const CoordParams &params)
    {
        Scenario s;
        s.name = config.name;
        s.params = params;
        s.chi = resolve_chi (config, params);
        s.paths = config.paths;
        s.uavs = config.uavs;
        s.topology = config.topology;
        s.pre_neighbors = config.pre_neighbors;
        s.reference_s = config.reference_s;
        s.duration = config.duration;
        s.dt = config.dt;
        s.threads = config.threads;
        return s;
    }

    std::string params_fragment (const CoordParams &p)
    {
        const std::pair<const char *, double> fields[] = {
            {"a", p.a},         {"R1", p.R1},         {"v_m", p.v_m},         {"R2", p.R2},     {"alpha", p.alpha},
            {"c", p.c},         {"k1", p.k1},         {"k2", p.k2},           {"k3", p.k3},     {"eps0", p.eps0},
            {"lambda", p.lambda}, {"delta1", p.delta1}, {"delta2", p.delta2}, {"L", p.L},       {"sign_epsilon", p.sign_epsilon},
        };
        std::string out = "# coordination-set parameters (m, rad, m/s, rad/s)\nparams:\n";
        for (const auto &[key, value] : fields)
            out += fmt::format ("  {}: {}\n", key, value);
        return out;
    }

} // namespace cpf::cli
