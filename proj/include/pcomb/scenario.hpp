#pragma once

// Simulation scenarios: which p-value distributions are combined, and how
// observations are drawn under the null and under alternatives.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcomb/distributions.hpp"

namespace pcomb {

enum class ScenarioKind { synthetic, binomial, geometric_iid, geometric_noniid, circular };

/// Four fixed 61/42-atom distributions with one or two heavy cells:
/// PL a 0.4 cell at the left, PR at the right, PC in the middle, PS 0.3 at both ends.
enum class SyntheticShape { PL, PR, PC, PS };

struct Scenario {
    ScenarioKind kind = ScenarioKind::synthetic;
    SyntheticShape shape = SyntheticShape::PC;
    double theta0 = 0.5;                  // binomial null success probability
    std::int64_t trials = 5;              // binomial trials
    double p0 = 0.5;                      // geometric-iid null probability
    std::vector<double> p0_set{0.2, 0.5, 0.8};  // geometric-noniid null probabilities, one drawn per test
    std::int64_t points = 11;             // circular grid size N (odd)
    Side side = Side::left;               // p-value side (fixed to left for circular)
    /// Binomial theta, geometric p1, noniid common offset p1 - p0, or circular
    /// lambda. Absent means the null.
    std::optional<double> alternative;
    std::size_t n = 100;                  // tests per replicate

    /// Alternative parameter that reproduces the null.
    std::optional<double> null_parameter() const;
    double effective_alternative() const;
    /// Identifier without commas, e.g. "geometric-iid:p0=0.5:right".
    std::string name() const;
    void validate() const;
};

std::string_view to_string(SyntheticShape shape);
SyntheticShape parse_shape(std::string_view name);
std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view name);

DiscretePValueDist synthetic_distribution(SyntheticShape shape);

/// Null model of T = min(X, N - X) for X uniform on N points of a circle:
/// T = 0 with probability 1/N, t = 1..(N-1)/2 with 2/N each. Left-sided
/// p-values are (2T + 1)/N.
StatisticModel circular_model(std::int64_t points, double lambda = 0.0);

/// One kind of test within a scenario: the null model (absent for the
/// synthetic shapes, which are given as p-value atoms) and the model the
/// statistic is drawn from.
struct TestDesign {
    DiscretePValueDist null_dist;
    std::optional<StatisticModel> null_model;
    std::optional<StatisticModel> draw_model;  // absent: draw the null atoms directly
};

/// Distinct test designs; a geometric-noniid replicate draws each test's
/// design uniformly from this list, other scenarios have exactly one.
std::vector<TestDesign> scenario_designs(const Scenario& scenario, double alternative);

}  // namespace pcomb
