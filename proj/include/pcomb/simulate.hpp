#pragma once

// Monte-Carlo Type I error and power experiments.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcomb/kernels.hpp"
#include "pcomb/scenario.hpp"

namespace pcomb {

/// Method label of the likelihood-ratio comparator for i.i.d. geometric data.
inline constexpr std::string_view kLrtGeometric = "lrt-geometric";
inline constexpr std::string_view kGeneratorName = "mt19937_64/seed_seq(seed,replicate)";

struct ExecOptions {
    bool serial = false;  // use the reference kernel
    int threads = 0;      // OpenMP team size; 0 = runtime default
};

struct ExperimentRow {
    std::string scenario;
    std::string method;
    std::size_t n;
    double alt_param;  // NaN when the scenario has no parameter
    double alpha;
    std::size_t reps;
    std::uint64_t rejections;
    double proportion;
    double mc_se;
    std::uint64_t seed;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    std::string generator{kGeneratorName};
};

/// Conservative rejection rule of the likelihood-ratio test for n i.i.d.
/// geometric(p0) observations, based on T = sum X_j (negative binomial under
/// the null). Right-sided p-values pair with the alternative p1 < p0 and
/// reject for large T at the smallest c with P(T >= c) <= alpha; left-sided
/// ones reject for small T at the largest c with P(T <= c) <= alpha.
sim::LrtRule geometric_lrt_rule(double p0, std::size_t n, double alpha, Side side);

struct SampledPValue {
    double p;
    std::size_t atom;
    std::size_t design;  // index into scenario_designs()
};

/// One replicate's worth (scenario.n) of observed p-values, drawn under the
/// scenario's alternative (or its null when none is set).
std::vector<SampledPValue> sample_pvalues(const Scenario& scenario, sim::ReplicateRng& rng);

/// Rejection rates under the null for every n in n_grid.
ExperimentReport type1_experiment(const Scenario& scenario, std::span<const Method> methods,
                                  std::span<const std::size_t> n_grid, double alpha, std::size_t reps,
                                  std::uint64_t seed, const ExecOptions& exec = {});

/// Rejection rates at each alternative parameter, with scenario.n tests per
/// replicate. All grid points reuse the same replicate streams.
ExperimentReport power_experiment(const Scenario& scenario, std::span<const double> alt_grid,
                                  std::span<const Method> methods, bool include_lrt, double alpha, std::size_t reps,
                                  std::uint64_t seed, const ExecOptions& exec = {});

}  // namespace pcomb
