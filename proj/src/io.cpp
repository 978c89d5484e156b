#include "pcomb/io.hpp"

#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "pcomb/error.hpp"

namespace pcomb::io {

namespace {

const Json& field(const Json& j, const char* key, std::string_view context) {
    if (!j.is_object()) throw InvalidArgument(fmt::format("{}: expected a JSON object", context));
    const auto it = j.find(key);
    if (it == j.end()) throw InvalidArgument(fmt::format("{}: missing field '{}'", context, key));
    return *it;
}

template <class T>
T get_as(const Json& j, std::string_view context) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(fmt::format("{}: {}", context, e.what()));
    }
}

std::string fixed(double v) {
    if (std::isnan(v)) return "NA";
    return fmt::format("{:.6f}", v);
}

}  // namespace

Json to_json(const DiscretePValueDist& dist) {
    return Json{{"side", to_string(dist.side())}, {"F", std::vector<double>(dist.atoms().begin(), dist.atoms().end())}};
}

DiscretePValueDist dist_from_json(const Json& j) {
    const auto side = j.contains("side") ? parse_side(get_as<std::string>(j["side"], "p-value distribution side"))
                                         : Side::left;
    return custom_pvalue_distribution(get_as<std::vector<double>>(field(j, "F", "p-value distribution"), "atoms"), side);
}

Json to_json(const StatisticModel& model) {
    Json j{{"family", to_string(model.family())}};
    if (model.family() == Family::custom) {
        j["support"] = std::vector<std::int64_t>(model.support().begin(), model.support().end());
        j["pmf"] = std::vector<double>(model.pmf().begin(), model.pmf().end());
    } else {
        Json params = Json::object();
        for (const auto& [k, v] : model.params()) params[k] = v;
        j["params"] = params;
    }
    return j;
}

StatisticModel model_from_json(const Json& j) {
    const Family family = parse_family(get_as<std::string>(field(j, "family", "model"), "model family"));
    if (family == Family::custom) {
        return make_custom_model(get_as<std::vector<std::int64_t>>(field(j, "support", "custom model"), "support"),
                                 get_as<std::vector<double>>(field(j, "pmf", "custom model"), "pmf"));
    }
    Params params;
    const Json& p = field(j, "params", "model");
    if (!p.is_object()) throw InvalidArgument("model: 'params' must be an object");
    for (const auto& [k, v] : p.items()) params[k] = get_as<double>(v, fmt::format("model parameter '{}'", k));
    return make_statistic_model(family, params);
}

Json to_json(const AdjustedStatistic& adjusted) {
    return Json{{"method", to_string(adjusted.spec.method)},
                {"side", to_string(adjusted.dist.side())},
                {"z", adjusted.z},
                {"F", std::vector<double>(adjusted.dist.atoms().begin(), adjusted.dist.atoms().end())},
                {"mean", adjusted.mean},
                {"variance", adjusted.variance}};
}

Json to_json(const SurrogateDist& surrogate) {
    Json j{{"family", to_string(surrogate.law.kind())}, {"n", surrogate.n}, {"tail", to_string(surrogate.tail)}};
    if (surrogate.law.kind() == ContinuousLaw::Kind::gamma) {
        j["shape"] = surrogate.law.first();
        j["scale"] = surrogate.law.second();
    } else {
        j["mean"] = surrogate.law.first();
        j["sd"] = surrogate.law.second();
    }
    return j;
}

Json to_json(const CombinedResult& result) {
    return Json{{"method", to_string(result.method)}, {"n", result.n},
                {"S", result.statistic},            {"p", result.p_value},
                {"surrogate", to_json(result.surrogate)}, {"atoms", result.atoms}};
}

Json to_json(const MetricsReport& report) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
        rows.push_back(Json{{"method", to_string(r.method)},
                            {"variance", r.variance},
                            {"ratio", r.ratio},
                            {"scaled_w2", r.scaled_w2},
                            {"w2_to_Y", r.w2_to_Y},
                            {"lower_bound", r.lower_bound}});
    }
    return Json{{"rows", rows},
                {"max_ratio", to_string(report.max_ratio)},
                {"min_scaled_w2", to_string(report.min_scaled_w2)}};
}

Json to_json(const Scenario& s) {
    Json j{{"kind", to_string(s.kind)}, {"n", s.n}};
    switch (s.kind) {
        case ScenarioKind::synthetic: j["shape"] = to_string(s.shape); break;
        case ScenarioKind::binomial:
            j["theta0"] = s.theta0;
            j["trials"] = s.trials;
            j["side"] = to_string(s.side);
            break;
        case ScenarioKind::geometric_iid:
            j["p0"] = s.p0;
            j["side"] = to_string(s.side);
            break;
        case ScenarioKind::geometric_noniid:
            j["p0"] = s.p0_set;
            j["side"] = to_string(s.side);
            break;
        case ScenarioKind::circular: j["points"] = s.points; break;
    }
    if (s.alternative) j["alternative"] = *s.alternative;
    return j;
}

Scenario scenario_from_json(const Json& j) {
    Scenario s;
    s.kind = parse_scenario_kind(get_as<std::string>(field(j, "kind", "scenario"), "scenario kind"));
    if (j.contains("n")) s.n = get_as<std::size_t>(j["n"], "scenario n");
    if (j.contains("side")) s.side = parse_side(get_as<std::string>(j["side"], "scenario side"));
    if (j.contains("alternative")) s.alternative = get_as<double>(j["alternative"], "scenario alternative");
    switch (s.kind) {
        case ScenarioKind::synthetic:
            s.shape = parse_shape(get_as<std::string>(field(j, "shape", "synthetic scenario"), "shape"));
            break;
        case ScenarioKind::binomial:
            s.theta0 = get_as<double>(field(j, "theta0", "binomial scenario"), "theta0");
            s.trials = get_as<std::int64_t>(field(j, "trials", "binomial scenario"), "trials");
            break;
        case ScenarioKind::geometric_iid: s.p0 = get_as<double>(field(j, "p0", "geometric scenario"), "p0"); break;
        case ScenarioKind::geometric_noniid:
            if (j.contains("p0")) s.p0_set = get_as<std::vector<double>>(j["p0"], "p0");
            break;
        case ScenarioKind::circular:
            s.points = get_as<std::int64_t>(field(j, "points", "circular scenario"), "points");
            break;
    }
    s.validate();
    return s;
}

CombineInput combine_input_from_json(const Json& j) {
    CombineInput in;
    if (j.contains("method")) in.method = parse_method(get_as<std::string>(j["method"], "method"));
    const Json& tests = field(j, "tests", "combine input");
    if (!tests.is_array() || tests.empty()) throw InvalidArgument("combine input: 'tests' must be a non-empty array");
    for (std::size_t k = 0; k < tests.size(); ++k) {
        const Json& t = tests[k];
        const std::string ctx = fmt::format("test {}", k);
        if (t.contains("model")) {
            const StatisticModel model = model_from_json(t["model"]);
            const Side side = parse_side(get_as<std::string>(field(t, "side", ctx), "side"));
            const auto x = get_as<std::int64_t>(field(t, "x", ctx), "x");
            in.atoms.push_back(observed_pvalue(model, side, x).index);
            in.dists.push_back(pvalue_distribution(model, side));
        } else {
            DiscretePValueDist dist = dist_from_json(field(t, "pdist", ctx));
            in.atoms.push_back(dist.index_of(get_as<double>(field(t, "p", ctx), "p")));
            in.dists.push_back(std::move(dist));
        }
    }
    return in;
}

std::string metrics_csv(const MetricsReport& report) {
    std::string out = "method,variance,ratio,scaled_w2,w2_to_Y,lower_bound\n";
    for (const auto& r : report.rows) {
        out += fmt::format("{},{},{},{},{},{}\n", to_string(r.method), fixed(r.variance), fixed(r.ratio),
                           fixed(r.scaled_w2), fixed(r.w2_to_Y), fixed(r.lower_bound));
    }
    return out;
}

std::string experiment_csv(const ExperimentReport& report) {
    std::string out = "scenario,method,n,alt_param,alpha,reps,rejections,proportion,mc_se,seed\n";
    for (const auto& r : report.rows) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.scenario, r.method, r.n, fixed(r.alt_param),
                           fixed(r.alpha), r.reps, r.rejections, fixed(r.proportion), fixed(r.mc_se), r.seed);
    }
    return out;
}

std::string gene_csv(const std::vector<GeneResult>& results) {
    std::string out = "gene,side,method,n,statistic,p_value\n";
    for (const auto& g : results) {
        out += fmt::format("{},{},{},{},{},{}\n", g.gene, to_string(g.side), to_string(g.result.method), g.result.n,
                           fixed(g.result.statistic), fixed(g.result.p_value));
    }
    return out;
}

Json to_json(const std::vector<GeneResult>& results) {
    Json arr = Json::array();
    for (const auto& g : results) {
        Json j = to_json(g.result);
        j["gene"] = g.gene;
        j["side"] = to_string(g.side);
        arr.push_back(std::move(j));
    }
    return arr;
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(fmt::format("cannot open '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(fmt::format("{}: malformed JSON: {}", origin, e.what()));
    }
}

}  // namespace pcomb::io
