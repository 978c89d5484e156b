#include "pcomb/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "pcomb/error.hpp"

namespace pcomb {

namespace {

constexpr double kMergeTol = 1e-12;

// Sorts (value, mass) pairs and merges values that agree within tolerance.
DiscreteLaw normalize(std::vector<std::pair<double, double>>& pairs, double scale) {
    std::sort(pairs.begin(), pairs.end());
    DiscreteLaw out;
    for (const auto& [v, m] : pairs) {
        if (!out.values.empty()) {
            const double last = out.values.back();
            const double tol = kMergeTol * std::max({std::fabs(last), std::fabs(v), scale});
            if (v - last <= tol) {
                out.masses.back() += m;
                continue;
            }
        }
        out.values.push_back(v);
        out.masses.push_back(m);
    }
    return out;
}

bool near(double a, double b) { return std::fabs(a - b) <= kMergeTol * std::max({std::fabs(a), std::fabs(b), 1.0}); }

}  // namespace

double DiscreteLaw::mean() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * masses[i];
    return s;
}

double DiscreteLaw::cdf(double s) const {
    double total = 0.0;
    for (std::size_t i = 0; i < values.size() && (values[i] <= s || near(values[i], s)); ++i) total += masses[i];
    return total;
}

double DiscreteLaw::upper_tail(double s) const {
    double total = 0.0;
    for (std::size_t i = values.size(); i-- > 0 && (values[i] >= s || near(values[i], s));) total += masses[i];
    return total;
}

DiscreteLaw exact_convolution(const AdjustedStatistic& adjusted, std::size_t n, std::size_t max_atoms) {
    if (n == 0) throw InvalidArgument("exact convolution: n must be at least 1");
    double scale = 0.0;
    std::vector<std::pair<double, double>> base;
    for (std::size_t i = 0; i < adjusted.size(); ++i) {
        base.emplace_back(adjusted.z[i], adjusted.mass(i));
        scale = std::max(scale, std::fabs(adjusted.z[i]));
    }
    DiscreteLaw one = normalize(base, scale);
    DiscreteLaw sum = one;
    for (std::size_t step = 1; step < n; ++step) {
        const std::size_t pairs_needed = sum.values.size() * one.values.size();
        if (pairs_needed > max_atoms) {
            throw InvalidArgument(fmt::format(
                "exact convolution: {} support pairs at step {} exceed the limit of {}", pairs_needed, step + 1, max_atoms));
        }
        std::vector<std::pair<double, double>> pairs;
        pairs.reserve(pairs_needed);
        for (std::size_t a = 0; a < sum.values.size(); ++a) {
            for (std::size_t b = 0; b < one.values.size(); ++b) {
                pairs.emplace_back(sum.values[a] + one.values[b], sum.masses[a] * one.masses[b]);
            }
        }
        sum = normalize(pairs, scale);
    }
    return sum;
}

}  // namespace pcomb
