#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/logistic.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/uniform.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "pcomb/metrics.hpp"
#include "pcomb/scenario.hpp"
#include "pcomb/special.hpp"
#include "random_dists.hpp"

using namespace pcomb;

namespace {

std::vector<double> masses_of(const AdjustedStatistic& a) {
    std::vector<double> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a.mass(i);
    return m;
}

std::function<double(double)> boost_quantile(const ContinuousLaw& law) {
    const double a = law.first(), b = law.second();
    switch (law.kind()) {
        case ContinuousLaw::Kind::normal:
            return [=](double w) { return boost::math::quantile(boost::math::normal_distribution<double>(a, b), w); };
        case ContinuousLaw::Kind::gamma:
            return [=](double w) { return boost::math::quantile(boost::math::gamma_distribution<double>(a, b), w); };
        case ContinuousLaw::Kind::logistic:
            return [=](double w) { return boost::math::quantile(boost::math::logistic_distribution<double>(a, b), w); };
        default:
            return [=](double w) { return boost::math::quantile(boost::math::uniform_distribution<double>(a, b), w); };
    }
}

// Sorted coupling of the discrete law with `atoms` equal-mass midpoint
// quantiles of the continuous law.
double discretized_w2(std::vector<double> z, std::vector<double> masses, const ContinuousLaw& law, std::size_t atoms) {
    std::vector<std::size_t> order(z.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
    const auto q = boost_quantile(law);
    double sum = 0.0;
    std::size_t k = 0;
    double edge = masses[order[0]];
    for (std::size_t j = 0; j < atoms; ++j) {
        const double w = (j + 0.5) / static_cast<double>(atoms);
        while (w > edge && k + 1 < order.size()) edge += masses[order[++k]];
        const double d = z[order[k]] - q(w);
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(atoms));
}

double continuous_w2(const ContinuousLaw& a, const ContinuousLaw& b) {
    const auto qa = boost_quantile(a);
    const auto qb = boost_quantile(b);
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double v = integrator.integrate([&](double w) {
        const double d = qa(w) - qb(w);
        return d * d;
    }, 0.0, 1.0, 1e-12);
    return std::sqrt(v);
}

}  // namespace

TEST_CASE("two-atom and point-mass distances") {
    const auto d = custom_pvalue_distribution({0.5, 1.0}, Side::left);
    const auto e = adjust(Method::edgington, d);
    CHECK(std::abs(w2_discrete_continuous(e, ContinuousLaw::uniform(0.0, 1.0)) - std::sqrt(1.0 / 12.0 - 0.0625)) <= 1e-12);
    const double z[] = {2.0};
    const double m[] = {1.0};
    CHECK(std::abs(w2_discrete_continuous(z, m, ContinuousLaw::gamma(1.0, 2.0)) - 2.0) <= 1e-10);

    // single-cell bound for N(0.5, 0.25) against the atom 0.25 on y < 0.5
    const double dz = -0.25, sd = 0.25;
    const double cell = dz * dz / 2.0 + 2.0 * dz * sd * special::kInvSqrt2Pi + sd * sd / 2.0;
    CHECK(std::abs(w2_lower_bound(Method::edgington, d) - std::sqrt(cell * 12.0)) <= 1e-10);
    CHECK(std::abs(w2_lower_bound(Method::edgington, d) - 0.3893) <= 1e-4);
}

TEST_CASE("variance identity against the exact continuous law") {
    const auto suite = testing::random_suite(31, 220);
    double worst = 0.0;
    for (const auto& d : suite) {
        for (Method m : kMethods) {
            const auto a = adjust(m, d);
            const double w2 = w2_discrete_continuous(a, continuous_law(m));
            worst = std::max(worst, std::abs(continuous_moments(m).variance - a.variance - w2 * w2));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("bound, triangle inequality and scaling") {
    const auto suite = testing::random_suite(32, 40);
    for (const auto& d : suite) {
        for (Method m : kMethods) {
            const auto a = adjust(m, d);
            const auto sur = term_surrogate(a);
            const double to_sur = w2_discrete_continuous(a, sur);
            const double to_y = w2_discrete_continuous(a, continuous_law(m));
            CHECK(to_sur <= to_y + continuous_w2(continuous_law(m), sur) + 1e-9);
            CHECK(w2_lower_bound(m, d) <= scaled_w2(m, d) + 1e-12);

            const double c = 3.7;
            std::vector<double> zc(a.z);
            for (auto& v : zc) v *= c;
            const auto masses = masses_of(a);
            const double scaled = w2_discrete_continuous(zc, masses, sur.scaled(c));
            CHECK(std::abs(scaled - c * w2_discrete_continuous(a.z, masses, sur)) <= 1e-9 * std::max(1.0, scaled));
        }
    }
}

TEST_CASE("quantile coupling matches a discretized transport plan") {
    // every cell must hold many of the 1e5 equal-mass atoms
    std::mt19937_64 rng(33);
    std::size_t tested = 0;
    for (std::size_t k = 0; tested < 12; ++k) {
        const DiscretePValueDist d = testing::random_dist(rng, k);
        double smallest = 1.0;
        for (std::size_t i = 0; i < d.size(); ++i) smallest = std::min(smallest, d.mass(i));
        if (d.size() > 6 || smallest < 1e-3) continue;
        ++tested;
        for (Method m : kMethods) {
            const auto a = adjust(m, d);
            const auto sur = term_surrogate(a);
            const double exact = w2_discrete_continuous(a, sur);
            const double disc = discretized_w2(a.z, masses_of(a), sur, 100000);
            INFO(to_string(m), " atoms=", d.size(), " exact=", exact, " discretized=", disc);
            CHECK(std::abs(exact - disc) <= 1e-3);
        }
    }
}

TEST_CASE("single-atom inputs are rejected") {
    const auto d = custom_pvalue_distribution({1.0}, Side::left);
    CHECK_THROWS(scaled_w2(Method::fisher, d));
    CHECK_THROWS(w2_lower_bound(Method::stouffer, d));
}

TEST_CASE("ranking on the synthetic shapes") {
    const std::vector<DiscretePValueDist> pl{synthetic_distribution(SyntheticShape::PL)};
    const auto r = rank_methods(pl);
    REQUIRE(r.rows.size() == 5);
    CHECK(r.max_ratio == Method::pearson);
    CHECK(r.min_scaled_w2 == Method::pearson);
    CHECK(w2_lower_bound(Method::fisher, pl[0]) > w2_lower_bound(Method::pearson, pl[0]));

    const std::vector<DiscretePValueDist> ps{synthetic_distribution(SyntheticShape::PS)};
    const auto s = rank_methods(ps);
    CHECK(s.max_ratio == Method::edgington);
    CHECK(std::abs(s.rows[0].ratio - s.rows[1].ratio) <= 1e-12);

    // fisher and pearson tie on the symmetric shape; the earlier method wins
    const std::vector<DiscretePValueDist> pc{synthetic_distribution(SyntheticShape::PC)};
    const auto c = rank_methods(pc);
    CHECK(std::abs(c.rows[0].scaled_w2 - c.rows[1].scaled_w2) <= 1e-12 * c.rows[0].scaled_w2);
    CHECK(c.min_scaled_w2 == Method::fisher);
}

TEST_CASE("ratio ordering for binomial(5, 0.9) left-sided") {
    const auto d = pvalue_distribution(make_statistic_model(Family::binomial, {{"trials", 5}, {"prob", 0.9}}), Side::left);
    const double f = variance_ratio(Method::fisher, d);
    const double e = variance_ratio(Method::edgington, d);
    const double s = variance_ratio(Method::stouffer, d);
    const double g = variance_ratio(Method::george, d);
    const double p = variance_ratio(Method::pearson, d);
    CHECK(f > e);
    CHECK(e > s);
    CHECK(s > g);
    CHECK(g > p);
    CHECK(std::abs(f - 0.871) <= 1e-3);
    CHECK(std::abs(p - 0.404) <= 1e-3);
}

TEST_CASE("averaged ratio over several distributions") {
    const auto suite = testing::random_suite(34, 5);
    for (Method m : kMethods) {
        double sum = 0.0;
        for (const auto& d : suite) sum += variance_ratio(m, d);
        CHECK(std::abs(variance_ratio(m, suite) - sum / 5.0) <= 1e-14);
    }
}

TEST_CASE("metrics stay finite for nearly degenerate distributions") {
    // A dominant cell gives Pearson term surrogates with shapes near 1e9.
    const std::vector<double> masses{1e-9, 1.0 - 2e-9, 1e-9};
    const auto d = pvalue_distribution_from_masses(masses, Side::left);
    for (Method m : kMethods) {
        const double w2 = scaled_w2(m, d);
        CHECK(std::isfinite(w2));
        CHECK(w2_lower_bound(m, d) <= w2 + 1e-12);
    }
    CHECK(term_surrogate(adjust(Method::pearson, d)).first() > 1e6);
}
