#include "pcomb/combine.hpp"

#include <cmath>
#include <fmt/format.h>

#include "pcomb/error.hpp"

namespace pcomb {

SurrogateDist surrogate(Method method, std::span<const double> variances) {
    if (variances.empty()) throw InvalidArgument("surrogate: no variances given");
    double total = 0.0;
    for (std::size_t j = 0; j < variances.size(); ++j) {
        if (!(variances[j] > 0.0) || !std::isfinite(variances[j])) {
            throw InvalidArgument(fmt::format(
                "surrogate: variance of term {} is {}; a single-atom p-value distribution cannot be combined", j,
                variances[j]));
        }
        total += variances[j];
    }
    return surrogate_from_total(method, variances.size(), total);
}

SurrogateDist surrogate_from_total(Method method, std::size_t n, double total_variance) {
    if (n == 0 || !(total_variance > 0.0)) throw InvalidArgument("surrogate: requires n >= 1 and positive variance");
    const double nd = static_cast<double>(n);
    const double avg = total_variance / nd;
    const MethodSpec spec = method_spec(method);
    switch (method) {
        case Method::fisher:
        case Method::pearson:
            return {ContinuousLaw::gamma(4.0 * nd / avg, avg / 2.0), n, spec.tail};
        case Method::stouffer:
        case Method::george:
        case Method::edgington:
            return {ContinuousLaw::normal(nd * spec.mean, std::sqrt(total_variance)), n, spec.tail};
        case Method::generic: break;
    }
    throw InvalidArgument("surrogate: unsupported method");
}

double surrogate_tail_p(const SurrogateDist& surrogate, double s) {
    return surrogate.tail == Tail::upper ? surrogate.law.ccdf(s) : surrogate.law.cdf(s);
}

double surrogate_quantile(const SurrogateDist& surrogate, double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument(fmt::format("surrogate quantile: p = {} outside (0, 1)", p));
    return surrogate.law.quantile(p);
}

CombinedResult combine_adjusted(std::span<const std::size_t> atoms, std::span<const AdjustedStatistic> adjusted) {
    if (adjusted.empty()) throw InvalidArgument("combine: no p-values given");
    if (atoms.size() != adjusted.size()) {
        throw InvalidArgument(fmt::format("combine: {} observations but {} distributions", atoms.size(), adjusted.size()));
    }
    const Method method = adjusted.front().spec.method;
    std::vector<double> variances;
    variances.reserve(adjusted.size());
    double s = 0.0;
    for (std::size_t j = 0; j < adjusted.size(); ++j) {
        const AdjustedStatistic& a = adjusted[j];
        if (a.spec.method != method) throw InvalidArgument("combine: adjusted statistics use different methods");
        if (a.degenerate()) {
            throw InvalidArgument(fmt::format("combine: p-value distribution {} has a single atom", j));
        }
        if (atoms[j] >= a.size()) throw InvalidArgument(fmt::format("combine: atom index out of range for test {}", j));
        s += a.z[atoms[j]];
        variances.push_back(a.variance);
    }
    SurrogateDist sur = surrogate(method, variances);
    const double p = surrogate_tail_p(sur, s);
    return CombinedResult{method, adjusted.size(), s, sur, p, std::vector<std::size_t>(atoms.begin(), atoms.end())};
}

CombinedResult combine(Method method, std::span<const double> observed, std::span<const DiscretePValueDist> dists) {
    if (observed.size() != dists.size()) {
        throw InvalidArgument(fmt::format("combine: {} p-values but {} distributions", observed.size(), dists.size()));
    }
    std::vector<std::size_t> atoms;
    std::vector<AdjustedStatistic> adjusted;
    atoms.reserve(dists.size());
    adjusted.reserve(dists.size());
    for (std::size_t j = 0; j < dists.size(); ++j) {
        atoms.push_back(dists[j].index_of(observed[j]));
        adjusted.push_back(adjust(method, dists[j]));
    }
    return combine_adjusted(atoms, adjusted);
}

}  // namespace pcomb
