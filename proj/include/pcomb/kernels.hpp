#pragma once

// Monte-Carlo replicate kernels. A scenario is compiled once into flat
// sampling tables; replicates then only draw uniforms, look up atoms and
// evaluate surrogate tails. The serial kernel is the reference; the OpenMP
// kernel must return identical counts for any thread count.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pcomb/combine.hpp"
#include "pcomb/scenario.hpp"

namespace pcomb::sim {

/// Independent stream for one replicate: mt19937_64 seeded from
/// seed_seq{seed, replicate}. Uniforms use the top 53 bits.
class ReplicateRng {
public:
    ReplicateRng(std::uint64_t seed, std::uint64_t replicate);

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer on [0, k).
    std::size_t below(std::size_t k);

private:
    std::mt19937_64 engine_;
};

/// Rejection rule on T = sum of the raw statistics.
struct LrtRule {
    bool upper;              // reject when T >= threshold, else when T <= threshold
    std::int64_t threshold;
    double size;             // exact null rejection probability
};

struct CompiledDesign {
    std::vector<double> cumulative;    // sampling CDF over outcomes, last entry 1
    std::vector<std::uint32_t> atom;   // null p-value atom of each outcome
    std::vector<std::int64_t> value;   // raw statistic of each outcome
    std::vector<std::vector<double>> z;  // adjusted values, [method][atom]
    std::vector<double> variance;        // [method]
    std::vector<double> atoms;           // null p-value atoms
};

struct CompiledPlan {
    std::vector<Method> methods;
    std::vector<CompiledDesign> designs;
    std::size_t n = 0;
    double alpha = 0.05;
    /// Surrogates for the single-design case, where they do not vary by replicate.
    std::vector<SurrogateDist> fixed_surrogates;
    std::optional<LrtRule> lrt;

    /// Number of counters a kernel returns: one per method, plus the LRT.
    std::size_t outcomes() const { return methods.size() + (lrt ? 1 : 0); }
};

CompiledPlan compile_plan(const Scenario& scenario, double alternative, std::span<const Method> methods,
                          std::size_t n, double alpha, std::optional<LrtRule> lrt);

struct Draw {
    std::size_t design;
    std::size_t outcome;
};

/// Draws one test of a replicate: its design (when there are several) and outcome.
Draw draw_test(const CompiledPlan& plan, ReplicateRng& rng);

/// Adds the rejections of replicate `r` to `counts`.
void run_replicate(const CompiledPlan& plan, std::uint64_t seed, std::uint64_t r, std::span<std::uint64_t> counts);

std::vector<std::uint64_t> count_rejections_serial(const CompiledPlan& plan, std::size_t reps, std::uint64_t seed);

/// threads <= 0 uses the OpenMP default. Without OpenMP this is the serial kernel.
std::vector<std::uint64_t> count_rejections_parallel(const CompiledPlan& plan, std::size_t reps, std::uint64_t seed,
                                                     int threads = 0);

}  // namespace pcomb::sim
