#pragma once
/**
 * @file   verification.hpp
 * @brief  Randomized property suites for the closed-loop guarantees of the hybrid law.
 *
 * Every suite evaluates the law with the pure sign function, draws its cases
 * from a seeded generator before any parallel work, and reports the first
 * counterexample in case order, so results do not depend on the thread count.
 */

#include <cpf/chi.hpp>
#include <cpf/param_design.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpf
{
    struct VerifyOptions
    {
        std::uint64_t seed = 1;
        std::size_t runs = 200;              ///< closed-loop runs per start class
        double run_duration = 200.0;         ///< s, invariance runs
        std::size_t samples = 100000;        ///< pointwise samples for the algebraic suites
        std::size_t boundary_samples = 10000;
        double dt = 0.01;                    ///< s
        int threads = 0;                     ///< 0 keeps the OpenMP default
    };

    struct SuiteResult
    {
        std::string name;
        std::string description;
        bool passed = false;
        std::size_t cases = 0;
        std::size_t failures = 0;
        std::size_t skipped = 0; ///< generated cases rejected by the suite's admissibility filter
        std::optional<std::string> counterexample;
        std::string detail;
    };

    /// Canonical suite names in report order.
    [[nodiscard]] const std::vector<std::string> &suite_names ();

    /// Canonical name for a suite name or accepted alias.
    [[nodiscard]] std::optional<std::string> resolve_suite_name (std::string_view name);

    /**
     * @brief Runs one suite.
     *
     * Suites: boundary, heading-rate, invariance, no-overtaking,
     * reachability-box, reachability-robust, reset-bound, sliding.
     * reset-bound also runs a second parameter set (reset_exercising_params)
     * so that speed resets actually occur.
     *
     * @throws ValidationError for an unknown suite name.
     */
    [[nodiscard]] SuiteResult run_suite (std::string_view name, const CoordParams &params, const ChiFunction &chi,
                                         const VerifyOptions &options);

    /// Runs the named suites (all when empty) and returns them in canonical order.
    [[nodiscard]] std::vector<SuiteResult> run_suites (const std::vector<std::string> &names, const CoordParams &params,
                                                       const ChiFunction &chi, const VerifyOptions &options);

    /**
     * @brief Feasible parameters with v_m = 0.8 v_max and the corner turn-rate inequality active.
     *
     * With v_m = v_max the reset can never fire (its result would have to lie
     * in [v_max, v)), so this set is used to exercise the reset branches.
     */
    [[nodiscard]] CoordParams reset_exercising_params (const CoordParams &base);

} // namespace cpf
