#pragma once

// Continuous one-dimensional laws used as surrogates and as the exact
// continuous counterparts of the combination statistics.

#include <string_view>

#include "pcomb/methods.hpp"

namespace pcomb {

class ContinuousLaw {
public:
    enum class Kind { normal, gamma, logistic, uniform };

    static ContinuousLaw normal(double mean, double sd);
    static ContinuousLaw gamma(double shape, double scale);
    static ContinuousLaw logistic(double location, double scale);
    static ContinuousLaw uniform(double lower, double upper);

    Kind kind() const noexcept { return kind_; }
    /// normal: (mean, sd); gamma: (shape, scale); logistic: (location, scale); uniform: (lower, upper).
    double first() const noexcept { return a_; }
    double second() const noexcept { return b_; }

    double pdf(double x) const;
    double cdf(double x) const;
    /// 1 - cdf(x) without cancellation.
    double ccdf(double x) const;
    /// Inverse cdf; returns the support endpoints at p = 0 and p = 1.
    double quantile(double p) const;

    double mean() const;
    double variance() const;

    /// Law of c * Y for c > 0.
    ContinuousLaw scaled(double c) const;

    /// Integral of (c - y)^2 dG(y) over the quantile range y in [G^-1(w_lo), G^-1(w_hi)].
    double cell_square_moment(double c, double w_lo, double w_hi) const;

private:
    ContinuousLaw(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    Kind kind_;
    double a_;
    double b_;
};

std::string_view to_string(ContinuousLaw::Kind kind);

/// Law of one continuous term Y of `method`: chi-square(2) for fisher and
/// pearson, N(0, 1), Logistic(0, 1) and Uniform(0, 1) for the others.
ContinuousLaw continuous_law(Method method);

}  // namespace pcomb
