#include "pcomb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pcomb/combine.hpp"
#include "pcomb/error.hpp"

namespace pcomb {

namespace {

std::vector<double> masses_of(const AdjustedStatistic& adjusted) {
    std::vector<double> m(adjusted.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = adjusted.mass(i);
    return m;
}

void require_nondegenerate(const DiscretePValueDist& dist) {
    if (dist.degenerate()) throw InvalidArgument("metric requires a p-value distribution with at least two atoms");
}

double sd_of(Method method) { return std::sqrt(continuous_moments(method).variance); }

}  // namespace

std::vector<double> coupling_costs(std::span<const double> z, std::span<const double> masses, const ContinuousLaw& law) {
    if (z.size() != masses.size() || z.empty()) throw InvalidArgument("coupling: values and masses differ in length");
    std::vector<std::size_t> order(z.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });

    std::vector<double> cost(z.size());
    double w = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::size_t i = order[k];
        const double next = (k + 1 == order.size()) ? 1.0 : std::min(w + masses[i], 1.0);
        cost[i] = law.cell_square_moment(z[i], w, next);
        w = next;
    }
    return cost;
}

double w2_discrete_continuous(std::span<const double> z, std::span<const double> masses, const ContinuousLaw& law) {
    const auto cost = coupling_costs(z, masses, law);
    return std::sqrt(std::accumulate(cost.begin(), cost.end(), 0.0));
}

double w2_discrete_continuous(const AdjustedStatistic& adjusted, const ContinuousLaw& law) {
    return w2_discrete_continuous(adjusted.z, masses_of(adjusted), law);
}

ContinuousLaw term_surrogate(const AdjustedStatistic& adjusted) {
    const double nu = adjusted.variance;
    return surrogate(adjusted.spec.method, std::span<const double>(&nu, 1)).law;
}

double variance_ratio(Method method, const DiscretePValueDist& dist) {
    return adjust(method, dist).variance / continuous_moments(method).variance;
}

double variance_ratio(Method method, std::span<const DiscretePValueDist> dists) {
    if (dists.empty()) throw InvalidArgument("variance ratio: no distributions given");
    double total = 0.0;
    for (const auto& d : dists) total += adjust(method, d).variance;
    return total / (static_cast<double>(dists.size()) * continuous_moments(method).variance);
}

double scaled_w2(Method method, const DiscretePValueDist& dist) {
    require_nondegenerate(dist);
    const AdjustedStatistic a = adjust(method, dist);
    return w2_discrete_continuous(a, term_surrogate(a)) / sd_of(method);
}

double w2_lower_bound(Method method, const DiscretePValueDist& dist) {
    require_nondegenerate(dist);
    const AdjustedStatistic a = adjust(method, dist);
    const auto cost = coupling_costs(a.z, masses_of(a), term_surrogate(a));
    return std::sqrt(*std::max_element(cost.begin(), cost.end())) / sd_of(method);
}

MethodMetrics method_metrics(Method method, const DiscretePValueDist& dist) {
    require_nondegenerate(dist);
    const AdjustedStatistic a = adjust(method, dist);
    const auto masses = masses_of(a);
    const double sd = sd_of(method);
    const auto cost = coupling_costs(a.z, masses, term_surrogate(a));
    MethodMetrics m{};
    m.method = method;
    m.variance = a.variance;
    m.ratio = a.variance / continuous_moments(method).variance;
    m.scaled_w2 = std::sqrt(std::accumulate(cost.begin(), cost.end(), 0.0)) / sd;
    m.lower_bound = std::sqrt(*std::max_element(cost.begin(), cost.end())) / sd;
    m.w2_to_Y = w2_discrete_continuous(a.z, masses, continuous_law(method));
    return m;
}

MetricsReport rank_methods(std::span<const DiscretePValueDist> dists) {
    if (dists.empty()) throw InvalidArgument("rank_methods: no distributions given");
    MetricsReport report{};
    const double n = static_cast<double>(dists.size());
    for (Method method : kMethods) {
        MethodMetrics avg{method, 0.0, 0.0, 0.0, 0.0, 0.0};
        for (const auto& d : dists) {
            const MethodMetrics m = method_metrics(method, d);
            avg.variance += m.variance / n;
            avg.ratio += m.ratio / n;
            avg.scaled_w2 += m.scaled_w2 / n;
            avg.w2_to_Y += m.w2_to_Y / n;
            avg.lower_bound += m.lower_bound / n;
        }
        report.rows.push_back(avg);
    }
    // Values that agree to rounding (mirror-symmetric designs) count as ties.
    auto better = [](double candidate, double incumbent, bool larger) {
        const double tol = 1e-12 * std::max(std::fabs(candidate), std::fabs(incumbent));
        return larger ? candidate > incumbent + tol : candidate < incumbent - tol;
    };
    std::size_t best_ratio = 0;
    std::size_t best_w2 = 0;
    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        if (better(report.rows[k].ratio, report.rows[best_ratio].ratio, true)) best_ratio = k;
        if (better(report.rows[k].scaled_w2, report.rows[best_w2].scaled_w2, false)) best_w2 = k;
    }
    report.max_ratio = report.rows[best_ratio].method;
    report.min_scaled_w2 = report.rows[best_w2].method;
    return report;
}

}  // namespace pcomb
