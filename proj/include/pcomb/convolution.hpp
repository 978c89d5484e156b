#pragma once

// Exact law of a sum of i.i.d. adjusted statistics, for small n.

#include <cstddef>
#include <vector>

#include "pcomb/adjust.hpp"

namespace pcomb {

struct DiscreteLaw {
    std::vector<double> values;  // strictly increasing
    std::vector<double> masses;

    double mean() const;
    /// P(S <= s), counting support points within 1e-12 relative of s.
    double cdf(double s) const;
    /// P(S >= s), with the same tolerance.
    double upper_tail(double s) const;
};

/// Law of Z_1 + ... + Z_n by repeated convolution. Support points closer than
/// 1e-12 relative are merged. Throws InvalidArgument when an intermediate
/// step would exceed `max_atoms` pairs.
DiscreteLaw exact_convolution(const AdjustedStatistic& adjusted, std::size_t n, std::size_t max_atoms = 10'000'000);

}  // namespace pcomb
