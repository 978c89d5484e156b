#pragma once

// Moment-matched surrogate nulls for the sum of adjusted statistics and the
// resulting global p-values.

#include <cstddef>
#include <span>
#include <vector>

#include "pcomb/adjust.hpp"
#include "pcomb/laws.hpp"

namespace pcomb {

struct SurrogateDist {
    ContinuousLaw law;  // gamma(shape, scale) or normal(mean, sd)
    std::size_t n;
    Tail tail;
};

/// Surrogate for a sum of n adjusted terms with variances nu_j. With
/// nu = mean(nu_j): fisher/pearson Gamma(4n/nu, nu/2); stouffer/george
/// N(0, sqrt(n nu)); edgington N(n/2, sqrt(n nu)).
SurrogateDist surrogate(Method method, std::span<const double> variances);

/// Same surrogate from the term count and the summed variance.
SurrogateDist surrogate_from_total(Method method, std::size_t n, double total_variance);

/// Upper-tail probability of s for an upper-tail surrogate, lower-tail otherwise.
double surrogate_tail_p(const SurrogateDist& surrogate, double s);

double surrogate_quantile(const SurrogateDist& surrogate, double p);

struct CombinedResult {
    Method method;
    std::size_t n;
    double statistic;
    SurrogateDist surrogate;
    double p_value;
    std::vector<std::size_t> atoms;  // atom index used from each distribution
};

/// Observed p-values are matched to atoms of their distributions within 1e-9
/// relative.
CombinedResult combine(Method method, std::span<const double> observed, std::span<const DiscretePValueDist> dists);

/// Same, from already adjusted distributions and atom indices.
CombinedResult combine_adjusted(std::span<const std::size_t> atoms, std::span<const AdjustedStatistic> adjusted);

}  // namespace pcomb
