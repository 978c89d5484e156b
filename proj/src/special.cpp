#include "pcomb/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

#include "pcomb/error.hpp"

namespace pcomb::special {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr int kMaxIter = 100000;

// lgamma(a) - Stirling's approximation without the correction series.
double stirling_error(double a) {
    if (a >= 15.0) {
        const double r = 1.0 / a;
        const double r2 = r * r;
        return r * (1.0 / 12.0 -
                    r2 * (1.0 / 360.0 -
                          r2 * (1.0 / 1260.0 -
                                r2 * (1.0 / 1680.0 - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360360.0))))));
    }
    return std::lgamma(a) - ((a - 0.5) * std::log(a) - a + kLogSqrt2Pi);
}

// log of x^a e^-x / Gamma(a).
double log_gamma_prefix(double a, double x) {
    if (a < 15.0) return a * std::log(x) - x - std::lgamma(a);
    const double t = (x - a) / a;
    return a * log1pmx(t) + 0.5 * std::log(a) - kLogSqrt2Pi - stirling_error(a);
}

// P(a, x) by the power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps * 0.5) {
            return sum * std::exp(log_gamma_prefix(a, x));
        }
    }
    throw ConvergenceError("incomplete gamma series did not converge");
}

// Q(a, x) by the Legendre continued fraction (modified Lentz); valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) {
            return h * std::exp(log_gamma_prefix(a, x));
        }
    }
    throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

// Uniform asymptotic expansion for large a near the transition x ~ a.
// Returns P(a, x) when x < a and Q(a, x) otherwise.
constexpr double kUniformShape = 1e6;

double horner(std::span<const double> c, double z) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
}

double gamma_small_tail_uniform(double a, double x) {
    static constexpr double c0[] = {-0.33333333333333333,   0.083333333333333333,  -0.014814814814814815,
                                    0.0011574074074074074,  0.0003527336860670194,  -0.00017875514403292181,
                                    0.39192631785224378e-4, -0.21854485106799922e-5, -0.185406221071516e-5,
                                    0.8296711340953086e-6,  -0.17665952736826079e-6, 0.67078535434014986e-8,
                                    0.10261809784240308e-7, -0.43820360184533532e-8, 0.91476995822367902e-9};
    static constexpr double c1[] = {-0.0018518518518518519,  -0.0034722222222222222,  0.0026455026455026455,
                                    -0.00099022633744855967, 0.00020576131687242798,  -0.40187757201646091e-6,
                                    -0.18098550334489978e-4, 0.76491609160811101e-5,  -0.16120900894563446e-5};
    static constexpr double c2[] = {0.0041335978835978836, -0.0026813271604938272, 0.00077160493827160494,
                                    0.20093878600823045e-5, -0.00010736653226365161};
    const double phi = -log1pmx((x - a) / a);
    const double y = a * phi;
    const double z = x < a ? -std::sqrt(2.0 * phi) : std::sqrt(2.0 * phi);
    const double r = 1.0 / a;
    const double series = horner(c0, z) + r * (horner(c1, z) + r * horner(c2, z));
    const double correction = series * std::exp(-y) / std::sqrt(2.0 * std::numbers::pi * a);
    return 0.5 * std::erfc(std::sqrt(y)) + (x < a ? -correction : correction);
}

bool use_uniform(double a, double x) { return a >= kUniformShape && std::fabs(x - a) < 0.4 * a; }

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || std::isnan(x)) throw InvalidArgument("incomplete gamma: requires a > 0");
}

// Solve P(a, x) = target (upper == false) or Q(a, x) = target (upper == true).
double gamma_inverse(double a, double target, bool upper) {
    if (!(a > 0.0)) throw InvalidArgument("gamma quantile: shape must be positive");
    if (!(target >= 0.0 && target <= 1.0)) throw InvalidArgument("gamma quantile: probability outside [0, 1]");
    if ((!upper && target == 0.0) || (upper && target == 1.0)) return 0.0;
    if ((!upper && target == 1.0) || (upper && target == 0.0)) return std::numeric_limits<double>::infinity();

    // Work on the tail with the smaller probability for relative precision.
    bool use_upper = upper ? target < 0.5 : target > 0.5;
    const double goal = use_upper ? (upper ? target : 1.0 - target) : (upper ? 1.0 - target : target);

    // Wilson-Hilferty start, falling back to the small-x expansion.
    const double z = upper ? -normal_quantile(target) : normal_quantile(target);
    const double c = 1.0 / (9.0 * a);
    double x = a * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
    if (!(x > 0.0) || !std::isfinite(x)) {
        x = std::exp((std::log(upper ? 1.0 - target : target) + std::lgamma(a + 1.0)) / a);
    }
    if (!(x > 0.0) || !std::isfinite(x)) x = a;

    auto residual = [&](double xv) {
        return use_upper ? gamma_q(a, xv) - goal : gamma_p(a, xv) - goal;
    };

    // Bracket the root: P increases in x, Q decreases.
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        const double f = residual(x);
        const bool too_far = use_upper ? f < 0.0 : f > 0.0;
        if (f == 0.0) return x;
        if (too_far) {
            hi = x;
        } else {
            lo = x;
        }
        const double dens = gamma_density(a, x);
        double next = x;
        if (dens > 0.0 && std::isfinite(dens)) {
            const double step = use_upper ? -f / dens : f / dens;
            next = x - step;
        }
        if (!(next > lo && next < hi)) {
            next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x + 1.0;
        }
        if (std::fabs(next - x) <= 4.0 * kEps * x) return next;
        x = next;
    }
    throw ConvergenceError("gamma quantile iteration did not converge");
}

}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_ccdf(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double normal_quantile(double p) {
    if (std::isnan(p) || p < 0.0 || p > 1.0) throw InvalidArgument("normal quantile: p outside [0, 1]");
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();

    const double q = p - 0.5;
    double val;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        val = q *
              (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                   45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
                133.14166789178437745) * r + 3.387132872796366608) /
              (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                   21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
                42.313330701600911252) * r + 1.0);
        return val;
    }

    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
        r -= 1.6;
        val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
                   1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
                4.6303378461565452959) * r + 1.42343711074968357734) /
              (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
                   0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
                2.05319162663775882187) * r + 1.0);
    } else {
        r -= 5.0;
        val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
                   0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
                5.4637849111641143699) * r + 6.6579046435011037772) /
              (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
                   7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
                0.59983220655588793769) * r + 1.0);
    }
    return q < 0.0 ? -val : val;
}

double log1pmx(double x) {
    if (std::fabs(x) < 0.01) {
        // -x^2/2 + x^3/3 - x^4/4 + ...
        double term = -x * x;
        double sum = 0.0;
        for (int k = 2; k < 30; ++k) {
            const double add = term / k;
            sum += add;
            if (std::fabs(add) < std::fabs(sum) * kEps) break;
            term *= -x;
        }
        return sum;
    }
    return std::log1p(x) - x;
}

double gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (use_uniform(a, x)) return x < a ? gamma_small_tail_uniform(a, x) : 1.0 - gamma_small_tail_uniform(a, x);
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (use_uniform(a, x)) return x < a ? 1.0 - gamma_small_tail_uniform(a, x) : gamma_small_tail_uniform(a, x);
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double gamma_density(double a, double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) {
        if (a < 1.0) return std::numeric_limits<double>::infinity();
        return a == 1.0 ? 1.0 : 0.0;
    }
    return std::exp(log_gamma_prefix(a, x)) / x;
}

double gamma_p_inv(double a, double p) { return gamma_inverse(a, p, false); }

double gamma_q_inv(double a, double q) { return gamma_inverse(a, q, true); }

}  // namespace pcomb::special
