#include "pcomb/laws.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "pcomb/error.hpp"
#include "pcomb/quadrature.hpp"
#include "pcomb/special.hpp"

namespace pcomb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive(double v, std::string_view what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(fmt::format("{} must be positive and finite", what));
}

}  // namespace

ContinuousLaw ContinuousLaw::normal(double mean, double sd) {
    if (!std::isfinite(mean)) throw InvalidArgument("normal: mean must be finite");
    require_positive(sd, "normal: sd");
    return {Kind::normal, mean, sd};
}

ContinuousLaw ContinuousLaw::gamma(double shape, double scale) {
    require_positive(shape, "gamma: shape");
    require_positive(scale, "gamma: scale");
    return {Kind::gamma, shape, scale};
}

ContinuousLaw ContinuousLaw::logistic(double location, double scale) {
    if (!std::isfinite(location)) throw InvalidArgument("logistic: location must be finite");
    require_positive(scale, "logistic: scale");
    return {Kind::logistic, location, scale};
}

ContinuousLaw ContinuousLaw::uniform(double lower, double upper) {
    if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper)) {
        throw InvalidArgument("uniform: requires finite lower < upper");
    }
    return {Kind::uniform, lower, upper};
}

double ContinuousLaw::pdf(double x) const {
    switch (kind_) {
        case Kind::normal: return special::normal_pdf((x - a_) / b_) / b_;
        case Kind::gamma: return special::gamma_density(a_, x / b_) / b_;
        case Kind::logistic: {
            const double t = std::exp(-std::fabs((x - a_) / b_));
            return t / ((1.0 + t) * (1.0 + t) * b_);
        }
        case Kind::uniform: return (x < a_ || x > b_) ? 0.0 : 1.0 / (b_ - a_);
    }
    return 0.0;
}

double ContinuousLaw::cdf(double x) const {
    switch (kind_) {
        case Kind::normal: return special::normal_cdf((x - a_) / b_);
        case Kind::gamma: return special::gamma_p(a_, std::max(x, 0.0) / b_);
        case Kind::logistic: return 1.0 / (1.0 + std::exp(-(x - a_) / b_));
        case Kind::uniform: return x <= a_ ? 0.0 : (x >= b_ ? 1.0 : (x - a_) / (b_ - a_));
    }
    return 0.0;
}

double ContinuousLaw::ccdf(double x) const {
    switch (kind_) {
        case Kind::normal: return special::normal_ccdf((x - a_) / b_);
        case Kind::gamma: return special::gamma_q(a_, std::max(x, 0.0) / b_);
        case Kind::logistic: return 1.0 / (1.0 + std::exp((x - a_) / b_));
        case Kind::uniform: return x <= a_ ? 1.0 : (x >= b_ ? 0.0 : (b_ - x) / (b_ - a_));
    }
    return 0.0;
}

double ContinuousLaw::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("quantile: probability {} outside [0, 1]", p));
    switch (kind_) {
        case Kind::normal: return a_ + b_ * special::normal_quantile(p);
        case Kind::gamma: return b_ * special::gamma_p_inv(a_, p);
        case Kind::logistic:
            if (p == 0.0) return -kInf;
            if (p == 1.0) return kInf;
            return a_ + b_ * (std::log(p) - std::log1p(-p));
        case Kind::uniform: return a_ + (b_ - a_) * p;
    }
    return 0.0;
}

double ContinuousLaw::mean() const {
    switch (kind_) {
        case Kind::normal:
        case Kind::logistic: return a_;
        case Kind::gamma: return a_ * b_;
        case Kind::uniform: return 0.5 * (a_ + b_);
    }
    return 0.0;
}

double ContinuousLaw::variance() const {
    switch (kind_) {
        case Kind::normal: return b_ * b_;
        case Kind::gamma: return a_ * b_ * b_;
        case Kind::logistic: return b_ * b_ * special::kPi * special::kPi / 3.0;
        case Kind::uniform: return (b_ - a_) * (b_ - a_) / 12.0;
    }
    return 0.0;
}

ContinuousLaw ContinuousLaw::scaled(double c) const {
    require_positive(c, "scale factor");
    switch (kind_) {
        case Kind::normal: return normal(c * a_, c * b_);
        case Kind::gamma: return gamma(a_, c * b_);
        case Kind::logistic: return logistic(c * a_, c * b_);
        case Kind::uniform: return uniform(c * a_, c * b_);
    }
    return *this;
}

double ContinuousLaw::cell_square_moment(double c, double w_lo, double w_hi) const {
    if (!(w_hi > w_lo)) return 0.0;
    const double mass = w_hi - w_lo;
    switch (kind_) {
        case Kind::normal: {
            // Standard-normal partial moments over [alpha, beta].
            const double alpha = special::normal_quantile(w_lo);
            const double beta = special::normal_quantile(w_hi);
            const double phi_a = std::isfinite(alpha) ? special::normal_pdf(alpha) : 0.0;
            const double phi_b = std::isfinite(beta) ? special::normal_pdf(beta) : 0.0;
            const double xphi_a = std::isfinite(alpha) ? alpha * phi_a : 0.0;
            const double xphi_b = std::isfinite(beta) ? beta * phi_b : 0.0;
            const double m1 = phi_a - phi_b;
            const double m2 = mass - (xphi_b - xphi_a);
            const double cc = c - a_;
            return cc * cc * mass - 2.0 * cc * b_ * m1 + b_ * b_ * m2;
        }
        case Kind::uniform: {
            const double lo = quantile(w_lo);
            const double hi = quantile(w_hi);
            const double u = c - lo;
            const double v = c - hi;
            return (u * u * u - v * v * v) / (3.0 * (b_ - a_));
        }
        case Kind::gamma:
        case Kind::logistic: {
            const double lo = w_lo <= 0.0 ? (kind_ == Kind::gamma ? 0.0 : -kInf) : quantile(w_lo);
            const double hi = w_hi >= 1.0 ? kInf : quantile(w_hi);
            quad::Options opt;
            opt.abs_tol = 1e-13;
            opt.rel_tol = 1e-12;
            opt.max_intervals = 4000;
            const auto f = [&](double y) {
                const double g = pdf(y);
                if (g == 0.0) return 0.0;
                const double r = c - y;
                return r * r * g;
            };
            return quad::integrate_any(f, lo, hi, opt).value;
        }
    }
    return 0.0;
}

std::string_view to_string(ContinuousLaw::Kind kind) {
    switch (kind) {
        case ContinuousLaw::Kind::normal: return "normal";
        case ContinuousLaw::Kind::gamma: return "gamma";
        case ContinuousLaw::Kind::logistic: return "logistic";
        case ContinuousLaw::Kind::uniform: return "uniform";
    }
    return "unknown";
}

ContinuousLaw continuous_law(Method method) {
    switch (method) {
        case Method::fisher:
        case Method::pearson: return ContinuousLaw::gamma(1.0, 2.0);
        case Method::george: return ContinuousLaw::logistic(0.0, 1.0);
        case Method::stouffer: return ContinuousLaw::normal(0.0, 1.0);
        case Method::edgington: return ContinuousLaw::uniform(0.0, 1.0);
        case Method::generic: break;
    }
    throw InvalidArgument("the generic method has no fixed continuous law");
}

}  // namespace pcomb
