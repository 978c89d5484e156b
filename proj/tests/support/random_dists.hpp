#pragma once

// Randomized atom sequences shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "pcomb/distributions.hpp"

namespace pcomb::testing {

/// Masses of several flavours: uniform-ish, one dominant cell, a geometric
/// decay with tiny cells at the left end, and a few with extreme first or
/// last cells.
inline std::vector<double> random_masses(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> atoms(2, 14);
    const std::size_t m = atoms(rng);
    std::vector<double> w(m);
    switch (k % 5) {
        case 0:
            for (auto& x : w) x = 0.05 + u(rng);
            break;
        case 1:
            for (auto& x : w) x = 0.01 + 0.1 * u(rng);
            w[std::uniform_int_distribution<std::size_t>(0, m - 1)(rng)] = 2.0 + 3.0 * u(rng);
            break;
        case 2:
            for (std::size_t i = 0; i < m; ++i) w[i] = std::pow(10.0, -6.0 * u(rng)) * std::pow(0.3, double(m - 1 - i));
            break;
        case 3:
            for (auto& x : w) x = 0.1 + u(rng);
            w.front() = 1e-9 * (1.0 + u(rng));
            break;
        default:
            for (auto& x : w) x = 0.1 + u(rng);
            w.back() = 1e-7 * (1.0 + u(rng));
            break;
    }
    return w;
}

inline DiscretePValueDist random_dist(std::mt19937_64& rng, std::size_t k) {
    const auto w = random_masses(rng, k);
    double total = 0.0;
    for (double x : w) total += x;
    std::vector<double> masses(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) masses[i] = w[i] / total;
    return pvalue_distribution_from_masses(masses, Side::left);
}

inline std::vector<DiscretePValueDist> random_suite(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<DiscretePValueDist> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(random_dist(rng, k));
    return out;
}

}  // namespace pcomb::testing
