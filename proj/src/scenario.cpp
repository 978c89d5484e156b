#include "pcomb/scenario.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "pcomb/error.hpp"

namespace pcomb {

std::string_view to_string(SyntheticShape shape) {
    switch (shape) {
        case SyntheticShape::PL: return "PL";
        case SyntheticShape::PR: return "PR";
        case SyntheticShape::PC: return "PC";
        case SyntheticShape::PS: return "PS";
    }
    return "unknown";
}

SyntheticShape parse_shape(std::string_view name) {
    for (SyntheticShape s : {SyntheticShape::PL, SyntheticShape::PR, SyntheticShape::PC, SyntheticShape::PS}) {
        if (name == to_string(s)) return s;
    }
    throw InvalidArgument(fmt::format("unknown synthetic shape '{}' (expected PL, PR, PC or PS)", name));
}

std::string_view to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::synthetic: return "synthetic";
        case ScenarioKind::binomial: return "binomial";
        case ScenarioKind::geometric_iid: return "geometric-iid";
        case ScenarioKind::geometric_noniid: return "geometric-noniid";
        case ScenarioKind::circular: return "circular";
    }
    return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
    for (ScenarioKind k : {ScenarioKind::synthetic, ScenarioKind::binomial, ScenarioKind::geometric_iid,
                           ScenarioKind::geometric_noniid, ScenarioKind::circular}) {
        if (name == to_string(k)) return k;
    }
    throw InvalidArgument(fmt::format("unknown scenario kind '{}'", name));
}

DiscretePValueDist synthetic_distribution(SyntheticShape shape) {
    std::vector<double> masses;
    switch (shape) {
        case SyntheticShape::PL:
            masses.assign(61, 0.01);
            masses.front() = 0.4;
            break;
        case SyntheticShape::PR:
            masses.assign(61, 0.01);
            masses.back() = 0.4;
            break;
        case SyntheticShape::PC:
            masses.assign(61, 0.01);
            masses[30] = 0.4;
            break;
        case SyntheticShape::PS:
            masses.assign(42, 0.01);
            masses.front() = 0.3;
            masses.back() = 0.3;
            break;
    }
    return pvalue_distribution_from_masses(masses, Side::left);
}

StatisticModel circular_model(std::int64_t points, double lambda) {
    if (points < 3 || points % 2 == 0) throw InvalidArgument("circular: the number of points must be odd and >= 3");
    if (!std::isfinite(lambda)) throw InvalidArgument("circular: lambda must be finite");
    const std::int64_t half = (points - 1) / 2;
    std::vector<std::int64_t> support;
    std::vector<double> pmf;
    double total = 0.0;
    for (std::int64_t t = 0; t <= half; ++t) {
        const double w = (t == 0 ? 1.0 : 2.0) * std::exp(-lambda * static_cast<double>(t));
        support.push_back(t);
        pmf.push_back(w);
        total += w;
    }
    for (double& m : pmf) m /= total;
    return make_custom_model(std::move(support), std::move(pmf));
}

std::optional<double> Scenario::null_parameter() const {
    switch (kind) {
        case ScenarioKind::synthetic: return std::nullopt;
        case ScenarioKind::binomial: return theta0;
        case ScenarioKind::geometric_iid: return p0;
        case ScenarioKind::geometric_noniid: return 0.0;
        case ScenarioKind::circular: return 0.0;
    }
    return std::nullopt;
}

double Scenario::effective_alternative() const {
    if (alternative) return *alternative;
    return null_parameter().value_or(std::numeric_limits<double>::quiet_NaN());
}

std::string Scenario::name() const {
    switch (kind) {
        case ScenarioKind::synthetic: return fmt::format("synthetic-{}", to_string(shape));
        case ScenarioKind::binomial:
            return fmt::format("binomial:theta0={}:trials={}:{}", theta0, trials, to_string(side));
        case ScenarioKind::geometric_iid: return fmt::format("geometric-iid:p0={}:{}", p0, to_string(side));
        case ScenarioKind::geometric_noniid: {
            std::string set;
            for (std::size_t i = 0; i < p0_set.size(); ++i) set += fmt::format("{}{}", i ? "/" : "", p0_set[i]);
            return fmt::format("geometric-noniid:p0={}:{}", set, to_string(side));
        }
        case ScenarioKind::circular: return fmt::format("circular:N={}", points);
    }
    return "unknown";
}

void Scenario::validate() const {
    if (n == 0) throw InvalidArgument("scenario: n must be at least 1");
    switch (kind) {
        case ScenarioKind::synthetic:
            if (alternative) throw InvalidArgument("synthetic scenarios have no alternative");
            break;
        case ScenarioKind::binomial:
            if (!(theta0 > 0.0 && theta0 < 1.0)) throw InvalidArgument("binomial scenario: theta0 must lie in (0, 1)");
            if (trials < 1) throw InvalidArgument("binomial scenario: trials must be >= 1");
            if (alternative && !(*alternative > 0.0 && *alternative < 1.0)) {
                throw InvalidArgument("binomial scenario: alternative theta must lie in (0, 1)");
            }
            break;
        case ScenarioKind::geometric_iid:
            if (!(p0 > 0.0 && p0 < 1.0)) throw InvalidArgument("geometric scenario: p0 must lie in (0, 1)");
            if (alternative && !(*alternative > 0.0 && *alternative <= 1.0)) {
                throw InvalidArgument("geometric scenario: alternative p1 must lie in (0, 1]");
            }
            break;
        case ScenarioKind::geometric_noniid:
            if (p0_set.empty()) throw InvalidArgument("geometric-noniid scenario: empty p0 set");
            for (double p : p0_set) {
                if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("geometric-noniid scenario: p0 values must lie in (0, 1)");
                const double p1 = p + effective_alternative();
                if (!(p1 > 0.0 && p1 <= 1.0)) {
                    throw InvalidArgument(fmt::format("geometric-noniid scenario: offset moves p0 = {} outside (0, 1]", p));
                }
            }
            break;
        case ScenarioKind::circular:
            if (points < 3 || points % 2 == 0) throw InvalidArgument("circular scenario: points must be odd and >= 3");
            if (alternative && !std::isfinite(*alternative)) throw InvalidArgument("circular scenario: lambda must be finite");
            break;
    }
}

std::vector<TestDesign> scenario_designs(const Scenario& scenario, double alternative) {
    Scenario s = scenario;
    if (s.kind != ScenarioKind::synthetic) s.alternative = alternative;
    s.validate();

    auto model_design = [](StatisticModel null_model, Side side, StatisticModel draw) {
        DiscretePValueDist dist = pvalue_distribution(null_model, side);
        return TestDesign{std::move(dist), std::move(null_model), std::move(draw)};
    };
    auto geometric = [](double p) { return make_statistic_model(Family::geometric, {{"prob", p}}); };

    std::vector<TestDesign> designs;
    switch (s.kind) {
        case ScenarioKind::synthetic:
            designs.push_back(TestDesign{synthetic_distribution(s.shape), std::nullopt, std::nullopt});
            break;
        case ScenarioKind::binomial: {
            const auto bin = [&](double theta) {
                return make_statistic_model(Family::binomial,
                                            {{"trials", static_cast<double>(s.trials)}, {"prob", theta}});
            };
            designs.push_back(model_design(bin(s.theta0), s.side, bin(alternative)));
            break;
        }
        case ScenarioKind::geometric_iid:
            designs.push_back(model_design(geometric(s.p0), s.side, geometric(alternative)));
            break;
        case ScenarioKind::geometric_noniid:
            for (double p : s.p0_set) designs.push_back(model_design(geometric(p), s.side, geometric(p + alternative)));
            break;
        case ScenarioKind::circular:
            designs.push_back(model_design(circular_model(s.points), Side::left, circular_model(s.points, alternative)));
            break;
    }
    return designs;
}

}  // namespace pcomb
