#include "pcomb/simulate.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "pcomb/error.hpp"

namespace pcomb {

namespace {

std::vector<std::uint64_t> run_counts(const sim::CompiledPlan& plan, std::size_t reps, std::uint64_t seed,
                                      const ExecOptions& exec) {
    return exec.serial ? sim::count_rejections_serial(plan, reps, seed)
                       : sim::count_rejections_parallel(plan, reps, seed, exec.threads);
}

void append_rows(ExperimentReport& report, const Scenario& scenario, const sim::CompiledPlan& plan,
                 const std::vector<std::uint64_t>& counts, double alt, std::size_t reps, std::uint64_t seed) {
    for (std::size_t k = 0; k < counts.size(); ++k) {
        ExperimentRow row;
        row.scenario = scenario.name();
        row.method = k < plan.methods.size() ? std::string(to_string(plan.methods[k])) : std::string(kLrtGeometric);
        row.n = plan.n;
        row.alt_param = alt;
        row.alpha = plan.alpha;
        row.reps = reps;
        row.rejections = counts[k];
        row.proportion = static_cast<double>(counts[k]) / static_cast<double>(reps);
        row.mc_se = std::sqrt(row.proportion * (1.0 - row.proportion) / static_cast<double>(reps));
        row.seed = seed;
        report.rows.push_back(std::move(row));
    }
}

void check_reps(std::size_t reps) {
    if (reps == 0) throw InvalidArgument("experiment: reps must be at least 1");
}

}  // namespace

sim::LrtRule geometric_lrt_rule(double p0, std::size_t n, double alpha, Side side) {
    if (side == Side::two) throw InvalidArgument("lrt-geometric: only one-sided alternatives are supported");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("lrt-geometric: alpha must lie in (0, 1)");
    // T - n counts failures before the n-th success.
    const StatisticModel failures =
        make_statistic_model(Family::negative_binomial, {{"size", static_cast<double>(n)}, {"prob", p0}});
    const auto support = failures.support();
    const auto pmf = failures.pmf();
    const auto offset = static_cast<std::int64_t>(n);
    if (side == Side::right) {
        // Smallest c with P(T >= c) <= alpha; tails accumulated from the top.
        double tail = 0.0;
        std::int64_t threshold = support.back() + offset + 1;
        double size = 0.0;
        for (std::size_t k = support.size(); k-- > 0;) {
            tail += pmf[k];
            if (tail > alpha) break;
            threshold = support[k] + offset;
            size = tail;
        }
        return {true, threshold, size};
    }
    double tail = 0.0;
    std::int64_t threshold = support.front() + offset - 1;
    double size = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k) {
        tail += pmf[k];
        if (tail > alpha) break;
        threshold = support[k] + offset;
        size = tail;
    }
    return {false, threshold, size};
}

std::vector<SampledPValue> sample_pvalues(const Scenario& scenario, sim::ReplicateRng& rng) {
    const sim::CompiledPlan plan =
        sim::compile_plan(scenario, scenario.effective_alternative(), {}, scenario.n, 0.05, std::nullopt);
    std::vector<SampledPValue> out;
    out.reserve(scenario.n);
    for (std::size_t j = 0; j < scenario.n; ++j) {
        const sim::Draw d = sim::draw_test(plan, rng);
        const auto& design = plan.designs[d.design];
        const std::size_t atom = design.atom[d.outcome];
        out.push_back({design.atoms[atom], atom, d.design});
    }
    return out;
}

ExperimentReport type1_experiment(const Scenario& scenario, std::span<const Method> methods,
                                  std::span<const std::size_t> n_grid, double alpha, std::size_t reps,
                                  std::uint64_t seed, const ExecOptions& exec) {
    check_reps(reps);
    const auto null_param = scenario.null_parameter();
    if (scenario.alternative && null_param && *scenario.alternative != *null_param) {
        throw InvalidArgument("type1 experiment: the scenario sets a non-null alternative");
    }
    const double alt = null_param.value_or(std::numeric_limits<double>::quiet_NaN());
    ExperimentReport report;
    for (const std::size_t n : n_grid) {
        const sim::CompiledPlan plan = sim::compile_plan(scenario, alt, methods, n, alpha, std::nullopt);
        append_rows(report, scenario, plan, run_counts(plan, reps, seed, exec), alt, reps, seed);
    }
    return report;
}

ExperimentReport power_experiment(const Scenario& scenario, std::span<const double> alt_grid,
                                  std::span<const Method> methods, bool include_lrt, double alpha, std::size_t reps,
                                  std::uint64_t seed, const ExecOptions& exec) {
    check_reps(reps);
    if (scenario.kind == ScenarioKind::synthetic) {
        throw InvalidArgument("power experiment: synthetic scenarios have no alternative");
    }
    std::optional<sim::LrtRule> lrt;
    if (include_lrt) {
        if (scenario.kind != ScenarioKind::geometric_iid) {
            throw InvalidArgument(fmt::format("{} is only available for geometric-iid scenarios", kLrtGeometric));
        }
        lrt = geometric_lrt_rule(scenario.p0, scenario.n, alpha, scenario.side);
    }
    ExperimentReport report;
    for (const double alt : alt_grid) {
        const sim::CompiledPlan plan = sim::compile_plan(scenario, alt, methods, scenario.n, alpha, lrt);
        append_rows(report, scenario, plan, run_counts(plan, reps, seed, exec), alt, reps, seed);
    }
    return report;
}

}  // namespace pcomb
