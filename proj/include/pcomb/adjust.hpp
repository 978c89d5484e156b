#pragma once

// Replacement of each p-value atom by the average of the continuous
// transform over the atom's probability cell. This is the discrete law
// closest to the continuous one in 2-Wasserstein distance.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pcomb/distributions.hpp"
#include "pcomb/methods.hpp"

namespace pcomb {

struct AdjustedStatistic {
    MethodSpec spec;
    DiscretePValueDist dist;
    std::vector<double> z;  // one value per atom, indexed like dist
    double mean;
    double variance;

    std::size_t size() const noexcept { return z.size(); }
    double mass(std::size_t i) const { return dist.mass(i); }
    /// A single-atom input gives variance 0, which no surrogate accepts.
    bool degenerate() const noexcept { return dist.degenerate(); }
};

AdjustedStatistic adjust(Method method, const DiscretePValueDist& dist);

/// Closed-form adjusted value of one cell (lower, upper] for `method`.
double adjusted_value(Method method, double lower, double upper);

struct GenericOptions {
    double tolerance = 1e-10;  // absolute, on each cell average
    std::size_t scan_points = 64;
    std::size_t max_intervals = 2000;
};

using QuantileFunction = std::function<double(double)>;

/// Cell averages of an arbitrary increasing quantile function by adaptive
/// quadrature. With Orientation::reflected the transform is G^-1(1 - w).
/// Throws ConvergenceError carrying the cell index when a cell fails to
/// converge, or when sampling shows the function is not monotone or not a
/// number.
AdjustedStatistic adjust_generic(const QuantileFunction& quantile, Orientation orientation,
                                 const DiscretePValueDist& dist, const GenericOptions& options = {});

/// A quantile function given on both tails: lower(u) = G^-1(u) and
/// upper(u) = G^-1(1 - u), each accurate for small u.
struct TailQuantiles {
    QuantileFunction lower;
    QuantileFunction upper;
};

/// Same as above, evaluating each point through whichever tail keeps the
/// argument small. Cells next to 1 keep full accuracy this way.
AdjustedStatistic adjust_generic(const TailQuantiles& quantiles, Orientation orientation,
                                 const DiscretePValueDist& dist, const GenericOptions& options = {});

/// (h(v) - h(u)) / (v - u) for h(t) = t log t, with d = v - u supplied so
/// that it need not be recomputed from rounded endpoints.
double entropy_slope(double u, double v, double d);

}  // namespace pcomb
