#pragma once

// JSON and CSV forms of the library's values. Doubles in JSON are written as
// the shortest decimal that reads back to the same bits; CSV uses fixed
// six-decimal notation.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pcomb/combine.hpp"
#include "pcomb/gene.hpp"
#include "pcomb/metrics.hpp"
#include "pcomb/scenario.hpp"
#include "pcomb/simulate.hpp"

namespace pcomb::io {

using Json = nlohmann::json;

Json to_json(const DiscretePValueDist& dist);
DiscretePValueDist dist_from_json(const Json& j);

Json to_json(const StatisticModel& model);
StatisticModel model_from_json(const Json& j);

Json to_json(const AdjustedStatistic& adjusted);
Json to_json(const SurrogateDist& surrogate);
Json to_json(const CombinedResult& result);
Json to_json(const MetricsReport& report);
Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

/// Input of the combine command: {"method": ..., "tests": [...]}, where each
/// test is {"model": {...}, "side": ..., "x": ...} or {"pdist": {...}, "p": ...}.
struct CombineInput {
    std::optional<Method> method;
    std::vector<DiscretePValueDist> dists;
    std::vector<std::size_t> atoms;
};
CombineInput combine_input_from_json(const Json& j);

std::string metrics_csv(const MetricsReport& report);
std::string experiment_csv(const ExperimentReport& report);
std::string gene_csv(const std::vector<GeneResult>& results);
Json to_json(const std::vector<GeneResult>& results);

/// Reads a whole file, or standard input for "-".
std::string read_text(const std::string& path);
Json parse_json(const std::string& text, const std::string& origin);

}  // namespace pcomb::io
