#include "pcomb/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "pcomb/error.hpp"
#include "pcomb/quadrature.hpp"
#include "pcomb/special.hpp"

namespace pcomb {

namespace {

// K(F) = phi(Phi^-1(F)), with K(0) = K(1) = 0.
double normal_kernel(double f) {
    if (f <= 0.0 || f >= 1.0) return 0.0;
    return special::normal_pdf(special::normal_quantile(f));
}

// 8-point Gauss-Legendre average of Phi^-1 over a narrow interior cell, where
// the antiderivative difference would cancel.
double stouffer_narrow_cell(double a, double b) {
    static constexpr double x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                    0.9602898564975363};
    static constexpr double w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                    0.1012285362903763};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        sum += w[k] * (special::normal_quantile(mid - half * x[k]) + special::normal_quantile(mid + half * x[k]));
    }
    return 0.5 * sum;
}

double stouffer_cell(double a, double b) {
    const double d = b - a;
    if (d < 1e-5 && d < 1e-3 * std::min(a, 1.0 - b)) return stouffer_narrow_cell(a, b);
    return (normal_kernel(a) - normal_kernel(b)) / d;
}

// Mean of log(w) + 1 over the cell (a, b], and over its mirror image (1 - b, 1 - a].
double slope_direct(double a, double b) { return entropy_slope(a, b, b - a); }
double slope_reflected(double a, double b) { return entropy_slope(1.0 - b, 1.0 - a, b - a); }

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::fisher: return "fisher";
        case Method::pearson: return "pearson";
        case Method::george: return "george";
        case Method::stouffer: return "stouffer";
        case Method::edgington: return "edgington";
        case Method::generic: return "generic";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    for (Method m : kMethods) {
        if (name == to_string(m)) return m;
    }
    throw InvalidArgument(fmt::format("unknown method '{}'", name));
}

std::string_view to_string(Tail tail) { return tail == Tail::upper ? "upper" : "lower"; }

MethodSpec method_spec(Method method) {
    switch (method) {
        case Method::fisher: return {method, Orientation::reflected, 2.0, 4.0, Tail::upper};
        case Method::pearson: return {method, Orientation::direct, 2.0, 4.0, Tail::lower};
        case Method::george: return {method, Orientation::direct, 0.0, special::kPi * special::kPi / 3.0, Tail::lower};
        case Method::stouffer: return {method, Orientation::direct, 0.0, 1.0, Tail::lower};
        case Method::edgington: return {method, Orientation::direct, 0.5, 1.0 / 12.0, Tail::lower};
        case Method::generic: break;
    }
    throw InvalidArgument("the generic method has no fixed continuous law");
}

Moments continuous_moments(Method method) {
    const MethodSpec s = method_spec(method);
    return {s.mean, s.variance};
}

double entropy_slope(double u, double v, double d) {
    if (u <= 0.0) return std::log(v);
    return std::log(v) + (u / d) * std::log1p(d / u);
}

double adjusted_value(Method method, double a, double b) {
    switch (method) {
        case Method::fisher: return 2.0 - 2.0 * slope_direct(a, b);
        case Method::pearson: return 2.0 - 2.0 * slope_reflected(a, b);
        case Method::george: return slope_direct(a, b) - slope_reflected(a, b);
        case Method::stouffer: return stouffer_cell(a, b);
        case Method::edgington: return 0.5 * (a + b);
        case Method::generic: break;
    }
    throw InvalidArgument("adjusted_value: closed forms exist only for the five named methods");
}

AdjustedStatistic adjust(Method method, const DiscretePValueDist& dist) {
    const MethodSpec spec = method_spec(method);
    const std::size_t m = dist.size();
    std::vector<double> z(m);
    double mean = 0.0;
    double variance = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double a = dist.lower(i);
        const double b = dist.atom(i);
        const double p = b - a;
        double centered = 0.0;  // z_i - E[Y], formed without cancellation
        switch (method) {
            case Method::fisher: {
                const double q = slope_direct(a, b);
                z[i] = 2.0 - 2.0 * q;
                centered = -2.0 * q;
                break;
            }
            case Method::pearson: {
                const double q = slope_reflected(a, b);
                z[i] = 2.0 - 2.0 * q;
                centered = -2.0 * q;
                break;
            }
            case Method::george:
                // Equals (z_pearson - z_fisher) / 2; p * z^2 summed is the
                // squared entropy increment over the cell divided by p.
                z[i] = slope_direct(a, b) - slope_reflected(a, b);
                centered = z[i];
                break;
            case Method::stouffer:
                z[i] = stouffer_cell(a, b);
                centered = z[i];
                break;
            case Method::edgington:
                z[i] = 0.5 * (a + b);
                centered = 0.0;
                variance += a * b * p / 4.0;
                break;
            case Method::generic:
                break;
        }
        mean += p * z[i];
        if (method != Method::edgington) variance += p * centered * centered;
    }
    return AdjustedStatistic{spec, dist, std::move(z), mean, variance};
}

namespace {

constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;

// The transform at a point of (0, 1) given both as w and as 1 - w; whichever
// of the two is below 1/2 is the accurate one.
class Transform {
public:
    Transform(const TailQuantiles& q, bool reflected) : q_(q), reflected_(reflected) {}

    double operator()(double w, double cw) const {
        // G^-1(w) direct, G^-1(1 - w) reflected
        const bool small_w = w <= 0.5;
        if (reflected_) return small_w ? q_.upper(w) : q_.lower(cw);
        return small_w ? q_.lower(w) : q_.upper(cw);
    }

private:
    const TailQuantiles& q_;
    bool reflected_;
};

// Integral of the transform over (lo, hi], with lo < hi <= 1/2 or
// 1/2 <= lo < hi. Intervals at 0 or 1 go through an exponential map onto
// the half line.
double integrate_piece(const Transform& f, double lo, double hi, const quad::Options& opt) {
    if (hi <= 0.5) {
        if (lo == 0.0) {
            return quad::integrate_upper(
                       [&](double s) {
                           const double w = hi * std::exp(-s);
                           return w == 0.0 ? 0.0 : f(w, 1.0 - w) * w;
                       },
                       0.0, opt)
                .value;
        }
        return quad::integrate([&](double w) { return f(w, 1.0 - w); }, lo, hi, opt).value;
    }
    // 1 - w is exact for w >= 1/2.
    const double c_lo = 1.0 - hi;
    const double c_hi = 1.0 - lo;
    if (c_lo == 0.0) {
        return quad::integrate_upper(
                   [&](double s) {
                       const double cw = c_hi * std::exp(-s);
                       return cw == 0.0 ? 0.0 : f(std::min(1.0 - cw, kBelowOne), cw) * cw;
                   },
                   0.0, opt)
            .value;
    }
    return quad::integrate([&](double cw) { return f(1.0 - cw, cw); }, c_lo, c_hi, opt).value;
}

AdjustedStatistic average_cells(const TailQuantiles& quantiles, bool reflected, const DiscretePValueDist& dist,
                                const GenericOptions& options) {
    const Transform transform(quantiles, reflected);
    const std::size_t m = dist.size();

    // Monotonicity scan: nondecreasing along w, or nonincreasing when
    // reflected, across all cells.
    double previous = reflected ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double a = dist.lower(i);
        const double b = dist.atom(i);
        const double d = b - a;
        for (std::size_t k = 0; k < options.scan_points; ++k) {
            const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(options.scan_points);
            const double w = a + d * t;
            const double cw = w <= 0.5 ? 1.0 - w : (1.0 - b) + d * (1.0 - t);
            const double v = transform(w, cw);
            if (std::isnan(v)) {
                throw ConvergenceError(fmt::format("quantile function returned NaN at {} in cell {}", w, i), i);
            }
            if (reflected ? v > previous : v < previous) {
                throw ConvergenceError(fmt::format("quantile function is not monotone near {} in cell {}", w, i), i);
            }
            previous = v;
        }
    }

    std::vector<double> z(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double a = dist.lower(i);
        const double b = dist.atom(i);
        const double d = b - a;
        quad::Options opt;
        opt.abs_tol = options.tolerance * d;
        opt.rel_tol = 1e-13;
        opt.max_intervals = options.max_intervals;

        double integral = 0.0;
        try {
            if (b <= 0.5 || a >= 0.5) {
                integral = integrate_piece(transform, a, b, opt);
            } else {
                integral = integrate_piece(transform, a, 0.5, opt) + integrate_piece(transform, 0.5, b, opt);
            }
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(fmt::format("cell {} ({}, {}]: {}", i, a, b, e.what()), i);
        }
        z[i] = integral / d;
        if (!std::isfinite(z[i])) {
            throw ConvergenceError(fmt::format("cell {} ({}, {}]: non-finite average", i, a, b), i);
        }
    }

    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += dist.mass(i) * z[i];
    double variance = 0.0;
    for (std::size_t i = 0; i < m; ++i) variance += dist.mass(i) * (z[i] - mean) * (z[i] - mean);

    const MethodSpec spec{Method::generic, reflected ? Orientation::reflected : Orientation::direct,
                          std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                          reflected ? Tail::upper : Tail::lower};
    return AdjustedStatistic{spec, dist, std::move(z), mean, variance};
}

}  // namespace

AdjustedStatistic adjust_generic(const QuantileFunction& quantile, Orientation orientation,
                                 const DiscretePValueDist& dist, const GenericOptions& options) {
    const TailQuantiles q{quantile, [&](double u) { return quantile(std::min(1.0 - u, kBelowOne)); }};
    return average_cells(q, orientation == Orientation::reflected, dist, options);
}

AdjustedStatistic adjust_generic(const TailQuantiles& quantiles, Orientation orientation,
                                 const DiscretePValueDist& dist, const GenericOptions& options) {
    return average_cells(quantiles, orientation == Orientation::reflected, dist, options);
}

}  // namespace pcomb
