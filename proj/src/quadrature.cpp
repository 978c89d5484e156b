#include "pcomb/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "pcomb/error.hpp"

namespace pcomb::quad {

namespace {

// Kronrod abscissae on [-1, 1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    const double value = kronrod * half;
    double err = std::fabs((kronrod - gauss) * half);
    if (!std::isfinite(value)) {
        throw ConvergenceError("quadrature: integrand is not finite on the panel");
    }
    // Floor the estimate at roundoff in the panel value.
    err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::fabs(value));
    return {a, b, value, err};
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
    Result out;
    if (a == b) return out;
    if (!(std::isfinite(a) && std::isfinite(b))) {
        throw InvalidArgument("quad::integrate: endpoints must be finite");
    }
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    out.evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);

    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
        if (heap.size() >= opt.max_intervals) {
            throw ConvergenceError("quadrature: interval budget exhausted");
        }
        if (heap.top().error <= 0.0) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Cannot bisect at machine resolution; keep the panel as is.
            total_err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            continue;
        }
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Refresh the running sums now and then to shed accumulated roundoff.
        if (heap.size() % 64 == 0) {
            total = 0.0;
            total_err = 0.0;
            std::vector<Panel> all;
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            for (const auto& p : all) {
                total += p.value;
                total_err += p.error;
                heap.push(p);
            }
        }
    }

    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = sign * value;
    out.error = err;
    return out;
}

Result integrate_upper(const Integrand& f, double a, const Options& opt) {
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double x = a + t / s;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (s * s);
    };
    return integrate(g, 0.0, 1.0, opt);
}

Result integrate_lower(const Integrand& f, double b, const Options& opt) {
    auto g = [&](double t) {
        const double s = 1.0 - t;
        const double x = b - t / s;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx / (s * s);
    };
    return integrate(g, 0.0, 1.0, opt);
}

Result integrate_any(const Integrand& f, double a, double b, const Options& opt) {
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf) return integrate(f, a, b, opt);
    if (lo_inf && hi_inf) {
        Result left = integrate_lower(f, 0.0, opt);
        Result right = integrate_upper(f, 0.0, opt);
        return {left.value + right.value, left.error + right.error, left.evaluations + right.evaluations};
    }
    if (hi_inf) return integrate_upper(f, a, opt);
    return integrate_lower(f, b, opt);
}

}  // namespace pcomb::quad
