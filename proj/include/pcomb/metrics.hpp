#pragma once

// Diagnostics for choosing a combination method: variance ratio, scaled
// 2-Wasserstein distance to the surrogate, and the single-cell lower bound.

#include <span>
#include <vector>

#include "pcomb/adjust.hpp"
#include "pcomb/laws.hpp"

namespace pcomb {

/// Squared-distance cost of each atom under the quantile coupling of the
/// discrete law (values z, masses) with `law`. Atoms are paired with the
/// law's quantiles in ascending order of z; the result is indexed like z.
std::vector<double> coupling_costs(std::span<const double> z, std::span<const double> masses, const ContinuousLaw& law);

/// W2 between the discrete law (values z, masses) and a continuous law.
double w2_discrete_continuous(std::span<const double> z, std::span<const double> masses, const ContinuousLaw& law);
double w2_discrete_continuous(const AdjustedStatistic& adjusted, const ContinuousLaw& law);

/// Single-term surrogate moment-matched to `adjusted`.
ContinuousLaw term_surrogate(const AdjustedStatistic& adjusted);

double variance_ratio(Method method, const DiscretePValueDist& dist);
/// Averaged ratio sum(nu_j) / (n Var(Y)) over several distributions.
double variance_ratio(Method method, std::span<const DiscretePValueDist> dists);

/// W2(Z, surrogate) / SD(Y). Throws InvalidArgument for a single-atom dist.
double scaled_w2(Method method, const DiscretePValueDist& dist);

/// sqrt(max cell cost) / SD(Y) under the same coupling as scaled_w2.
double w2_lower_bound(Method method, const DiscretePValueDist& dist);

struct MethodMetrics {
    Method method;
    double variance;
    double ratio;
    double scaled_w2;
    double w2_to_Y;
    double lower_bound;
};

MethodMetrics method_metrics(Method method, const DiscretePValueDist& dist);

struct MetricsReport {
    std::vector<MethodMetrics> rows;  // in kMethods order
    Method max_ratio;
    Method min_scaled_w2;
};

/// Per-method metrics averaged over the given distributions, with the
/// recommended methods. Exact ties go to the earlier method in kMethods.
MetricsReport rank_methods(std::span<const DiscretePValueDist> dists);

}  // namespace pcomb
