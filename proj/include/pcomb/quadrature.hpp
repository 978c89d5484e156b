#pragma once

#include <cstddef>
#include <functional>

namespace pcomb::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    std::size_t max_intervals = 2000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over a finite [a, b].
/// Throws ConvergenceError when the interval budget runs out before the
/// tolerance max(abs_tol, rel_tol * |value|) is met.
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integral over [a, +inf) through x = a + t / (1 - t).
Result integrate_upper(const Integrand& f, double a, const Options& opt = {});

/// Integral over (-inf, b] through x = b - t / (1 - t).
Result integrate_lower(const Integrand& f, double b, const Options& opt = {});

/// Integral over [a, b] where either endpoint may be infinite.
Result integrate_any(const Integrand& f, double a, double b, const Options& opt = {});

}  // namespace pcomb::quad
