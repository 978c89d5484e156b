#include "pcomb/kernels.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>

#include "pcomb/error.hpp"

#ifdef PCOMB_HAVE_OPENMP
#include <omp.h>
#endif

namespace pcomb::sim {

namespace {

constexpr std::size_t kMaxMethods = 8;

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t replicate) {
    return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(replicate), static_cast<std::uint32_t>(replicate >> 32)};
}

CompiledDesign compile_design(const TestDesign& design, std::span<const Method> methods) {
    CompiledDesign out;
    const DiscretePValueDist& dist = design.null_dist;
    out.atoms.assign(dist.atoms().begin(), dist.atoms().end());

    if (design.draw_model) {
        const StatisticModel& draw = *design.draw_model;
        const StatisticModel& null_model = *design.null_model;
        const SidedPValues sided = sided_pvalues(null_model, dist.side());
        double running = 0.0;
        for (std::size_t k = 0; k < draw.size(); ++k) {
            const std::int64_t x = draw.support()[k];
            running += draw.pmf()[k];
            out.cumulative.push_back(running);
            out.atom.push_back(static_cast<std::uint32_t>(sided.atom_of[null_model.locate(x, dist.side())]));
            out.value.push_back(x);
        }
    } else {
        for (std::size_t k = 0; k < dist.size(); ++k) {
            out.cumulative.push_back(dist.atom(k));
            out.atom.push_back(static_cast<std::uint32_t>(k));
            out.value.push_back(static_cast<std::int64_t>(k));
        }
    }
    out.cumulative.back() = 1.0;

    for (Method m : methods) {
        AdjustedStatistic a = adjust(m, dist);
        out.z.push_back(std::move(a.z));
        out.variance.push_back(a.variance);
    }
    return out;
}

}  // namespace

ReplicateRng::ReplicateRng(std::uint64_t seed, std::uint64_t replicate) {
    auto seq = make_seed(seed, replicate);
    engine_.seed(seq);
}

std::size_t ReplicateRng::below(std::size_t k) {
    const auto v = static_cast<std::size_t>(uniform() * static_cast<double>(k));
    return std::min(v, k - 1);
}

CompiledPlan compile_plan(const Scenario& scenario, double alternative, std::span<const Method> methods,
                          std::size_t n, double alpha, std::optional<LrtRule> lrt) {
    if (methods.size() > kMaxMethods) throw InvalidArgument("too many methods in one experiment");
    if (n == 0) throw InvalidArgument("experiment: n must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("experiment: alpha must lie in (0, 1)");
    CompiledPlan plan;
    plan.methods.assign(methods.begin(), methods.end());
    plan.n = n;
    plan.alpha = alpha;
    plan.lrt = lrt;
    for (const TestDesign& d : scenario_designs(scenario, alternative)) plan.designs.push_back(compile_design(d, methods));
    if (plan.designs.size() == 1) {
        for (std::size_t k = 0; k < methods.size(); ++k) {
            plan.fixed_surrogates.push_back(
                surrogate_from_total(methods[k], n, static_cast<double>(n) * plan.designs[0].variance[k]));
        }
    }
    return plan;
}

Draw draw_test(const CompiledPlan& plan, ReplicateRng& rng) {
    const std::size_t nd = plan.designs.size();
    const std::size_t design = nd == 1 ? 0 : rng.below(nd);
    const auto& cum = plan.designs[design].cumulative;
    const double u = rng.uniform();
    const auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
    return {design, std::min(k, cum.size() - 1)};
}

void run_replicate(const CompiledPlan& plan, std::uint64_t seed, std::uint64_t r, std::span<std::uint64_t> counts) {
    ReplicateRng rng(seed, r);
    const std::size_t nm = plan.methods.size();
    const std::size_t nd = plan.designs.size();
    std::array<double, kMaxMethods> s{};
    std::array<double, kMaxMethods> nu{};
    std::int64_t total = 0;
    for (std::size_t j = 0; j < plan.n; ++j) {
        const Draw draw = draw_test(plan, rng);
        const CompiledDesign& d = plan.designs[draw.design];
        const std::size_t k = draw.outcome;
        const std::uint32_t atom = d.atom[k];
        for (std::size_t m = 0; m < nm; ++m) {
            s[m] += d.z[m][atom];
            nu[m] += d.variance[m];
        }
        total += d.value[k];
    }
    for (std::size_t m = 0; m < nm; ++m) {
        const SurrogateDist sur =
            nd == 1 ? plan.fixed_surrogates[m] : surrogate_from_total(plan.methods[m], plan.n, nu[m]);
        if (surrogate_tail_p(sur, s[m]) <= plan.alpha) ++counts[m];
    }
    if (plan.lrt) {
        const bool reject = plan.lrt->upper ? total >= plan.lrt->threshold : total <= plan.lrt->threshold;
        if (reject) ++counts[nm];
    }
}

std::vector<std::uint64_t> count_rejections_serial(const CompiledPlan& plan, std::size_t reps, std::uint64_t seed) {
    std::vector<std::uint64_t> counts(plan.outcomes(), 0);
    for (std::size_t r = 0; r < reps; ++r) run_replicate(plan, seed, r, counts);
    return counts;
}

std::vector<std::uint64_t> count_rejections_parallel(const CompiledPlan& plan, std::size_t reps, std::uint64_t seed,
                                                     int threads) {
#ifdef PCOMB_HAVE_OPENMP
    std::vector<std::uint64_t> counts(plan.outcomes(), 0);
    const auto total = static_cast<std::int64_t>(reps);
    const int team = threads > 0 ? threads : omp_get_max_threads();
    // Integer counts make the reduction order irrelevant, so results match
    // the serial kernel bit for bit.
#pragma omp parallel num_threads(team)
    {
        std::vector<std::uint64_t> local(plan.outcomes(), 0);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < total; ++r) run_replicate(plan, seed, static_cast<std::uint64_t>(r), local);
#pragma omp critical
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
    }
    return counts;
#else
    (void)threads;
    return count_rejections_serial(plan, reps, seed);
#endif
}

}  // namespace pcomb::sim
