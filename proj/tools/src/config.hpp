#pragma once
/**
 * @file   config.hpp
 * @brief  YAML scenario configuration: schema validation and conversion to library types.
 *
 * Units: lengths in m, speeds in m/s, angles in rad, turn rates in rad/s,
 * times in s, curvature in 1/m. Unknown keys anywhere in the document are
 * rejected with the key path in the message.
 */

#include <cpf/chi.hpp>
#include <cpf/escape_demo.hpp>
#include <cpf/param_design.hpp>
#include <cpf/simulator.hpp>
#include <cpf/verification.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cpf::cli
{
    /// Parameters either given explicitly or produced by the designer.
    struct ParamsSection
    {
        bool designed = false;
        CoordParams params;           ///< complete when !designed; gains and margins only when designed
        std::optional<double> k2;     ///< explicit k2, otherwise R1/a + 1
        std::optional<double> R2;     ///< explicit R2, otherwise the default bound
        DesignOptions design_options; ///< grid settings when designed
    };

    struct ChiSection
    {
        ChiKind kind = ChiKind::derived;
        double inner_slope = 0.0;
        double outer_slope = 0.0;
        double slope = 0.0;
    };

    struct OutputSection
    {
        std::filesystem::path dir = "out";
        std::string trace = "trace.csv";
        std::string metrics = "metrics.json";
        std::string plot = "plot.csv";
        std::string params_fragment = "params.cfg";
        std::string verify_report = "verify.json";
        std::size_t plot_stride = 10;
    };

    struct Config
    {
        std::filesystem::path source;
        std::string name;
        Limits limits;
        ParamsSection params;
        std::optional<ChiSection> chi;
        std::vector<Path> paths;
        std::vector<UavSpec> uavs;
        Topology topology = Topology::cyclic_sequence;
        std::map<int, int> pre_neighbors;
        double reference_s = 0.0;
        double duration = 0.0;
        double dt = 0.01;
        int threads = 1;
        OutputSection output;
        VerifyOptions verify;
        EscapeDemoOptions escape;
        std::optional<double> escape_eps0; ///< defaults to params eps0
    };

    /// Command-line overrides; unset fields keep the config value.
    struct Overrides
    {
        std::optional<std::filesystem::path> out;
        std::optional<double> dt;
        std::optional<double> duration;
        std::optional<std::uint64_t> seed;
        std::optional<int> threads;
    };

    /**
     * @brief Parses and validates a config file.
     * @throws ValidationError on syntax errors, unknown keys, missing or out-of-range values.
     */
    [[nodiscard]] Config load_config (const std::filesystem::path &file);

    /// Same as load_config for an in-memory document.
    [[nodiscard]] Config parse_config (const std::string &text, const std::filesystem::path &source = "<memory>");

    void apply_overrides (Config &config, const Overrides &overrides);

    /// Explicit parameters, or the designer's optimum completed with the configured gains.
    [[nodiscard]] CoordParams resolve_params (const Config &config);

    [[nodiscard]] ChiFunction resolve_chi (const Config &config, const CoordParams &params);

    [[nodiscard]] Scenario build_scenario (const Config &config, const CoordParams &params);

    /// `params:` section reproducing the given parameter set.
    [[nodiscard]] std::string params_fragment (const CoordParams &params);

} // namespace cpf::cli
