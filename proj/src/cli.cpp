#include "pcomb/cli.hpp"

#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "pcomb/error.hpp"
#include "pcomb/io.hpp"

namespace pcomb::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr const char* kSeedVariable = "PCOMB_SEED";

struct ModelOptions {
    std::string family;
    std::optional<double> trials, prob, lambda, size, population, successes, draws, odds;
    std::vector<std::int64_t> support;
    std::vector<double> pmf;
    std::string model_file;
    std::vector<double> atoms;
    std::string synthetic;
    std::optional<std::int64_t> circular;
    std::string side = "left";
};

struct Options {
    std::string output;
    ModelOptions model;
    std::vector<std::string> pdist_files;
    std::vector<std::string> methods;
    std::string input;
    std::string format;
    std::string scenario_file;
    std::string mode = "type1";
    std::vector<std::size_t> n_grid{2, 5, 10, 20, 50, 100};
    std::vector<double> alt_grid;
    bool lrt = false;
    double alpha = 0.05;
    std::size_t reps = 20000;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool serial = false;
    std::string example;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv(kSeedVariable)) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InvalidArgument(fmt::format("{}='{}' is not an unsigned integer", kSeedVariable, env));
    }
    return kDefaultSeed;
}

std::vector<Method> resolve_methods(const std::vector<std::string>& names) {
    if (names.empty()) return {kMethods.begin(), kMethods.end()};
    std::vector<Method> out;
    for (const auto& n : names) out.push_back(parse_method(n));
    return out;
}

DiscretePValueDist build_pdist(const ModelOptions& m) {
    const Side side = parse_side(m.side);
    if (!m.atoms.empty()) return custom_pvalue_distribution(m.atoms, side);
    if (!m.synthetic.empty()) return synthetic_distribution(parse_shape(m.synthetic));
    if (m.circular) return pvalue_distribution(circular_model(*m.circular), Side::left);
    if (!m.model_file.empty()) {
        return pvalue_distribution(io::model_from_json(io::parse_json(io::read_text(m.model_file), m.model_file)), side);
    }
    if (m.family.empty()) {
        throw InvalidArgument("pdist: give --family, --model, --atoms, --synthetic or --circular");
    }
    const Family family = parse_family(m.family);
    if (family == Family::custom) return pvalue_distribution(make_custom_model(m.support, m.pmf), side);
    Params params;
    const std::pair<const char*, const std::optional<double>*> named[] = {
        {"trials", &m.trials},         {"prob", &m.prob},   {"lambda", &m.lambda}, {"size", &m.size},
        {"population", &m.population}, {"successes", &m.successes}, {"draws", &m.draws}, {"odds", &m.odds}};
    for (const auto& [key, value] : named) {
        if (value->has_value()) params[key] = **value;
    }
    return pvalue_distribution(make_statistic_model(family, params), side);
}

// A file may hold one distribution object or an array of them.
std::vector<DiscretePValueDist> load_pdists(const std::vector<std::string>& files) {
    std::vector<DiscretePValueDist> out;
    for (const auto& f : files) {
        const io::Json j = io::parse_json(io::read_text(f), f);
        if (j.is_array()) {
            for (const auto& item : j) out.push_back(io::dist_from_json(item));
        } else {
            out.push_back(io::dist_from_json(j));
        }
    }
    return out;
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
    if (opt.output.empty() || opt.output == "-") {
        out << text;
        return;
    }
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) throw Error(fmt::format("cannot write '{}'", opt.output));
    file << text;
    if (!file) throw Error(fmt::format("failed writing '{}'", opt.output));
}

std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

void add_model_options(CLI::App* cmd, ModelOptions& m) {
    cmd->add_option("--family", m.family, "binomial, poisson, negative-binomial, geometric, hypergeometric, "
                                          "noncentral-hypergeometric or custom");
    cmd->add_option("--trials", m.trials);
    cmd->add_option("--prob", m.prob);
    cmd->add_option("--lambda", m.lambda);
    cmd->add_option("--size", m.size);
    cmd->add_option("--population", m.population);
    cmd->add_option("--successes", m.successes);
    cmd->add_option("--draws", m.draws);
    cmd->add_option("--odds", m.odds);
    cmd->add_option("--support", m.support, "Custom support")->delimiter(',');
    cmd->add_option("--pmf", m.pmf, "Custom masses")->delimiter(',');
    cmd->add_option("--model", m.model_file, "Statistic model JSON file, or - for stdin");
    cmd->add_option("--atoms", m.atoms, "Atoms F_1 < ... < F_m = 1")->delimiter(',');
    cmd->add_option("--synthetic", m.synthetic, "PL, PR, PC or PS");
    cmd->add_option("--circular", m.circular, "Odd number of points on the circle");
    cmd->add_option("--side", m.side, "left, right or two")->capture_default_str();
}

int dispatch(CLI::App& app, Options& opt, std::ostream& out) {
    const auto* used = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
    if (used == nullptr) throw CLI::CallForHelp();
    const std::string name = used->get_name();

    if (name == "pdist") {
        emit(opt, out, dump(io::to_json(build_pdist(opt.model))));
    } else if (name == "adjust") {
        const auto dists = load_pdists(opt.pdist_files);
        if (dists.size() != 1) throw InvalidArgument("adjust: expects exactly one p-value distribution");
        const auto methods = resolve_methods(opt.methods);
        io::Json j = io::Json::array();
        for (Method m : methods) j.push_back(io::to_json(adjust(m, dists.front())));
        emit(opt, out, dump(methods.size() == 1 ? j.front() : j));
    } else if (name == "combine") {
        const io::CombineInput in = io::combine_input_from_json(io::parse_json(io::read_text(opt.input), opt.input));
        std::vector<Method> methods;
        if (!opt.methods.empty()) {
            methods = resolve_methods(opt.methods);
        } else if (in.method) {
            methods = {*in.method};
        } else {
            methods = resolve_methods({});
        }
        io::Json j = io::Json::array();
        for (Method m : methods) {
            std::vector<AdjustedStatistic> adjusted;
            for (const auto& d : in.dists) adjusted.push_back(adjust(m, d));
            j.push_back(io::to_json(combine_adjusted(in.atoms, adjusted)));
        }
        emit(opt, out, dump(methods.size() == 1 ? j.front() : j));
    } else if (name == "metrics") {
        std::vector<DiscretePValueDist> dists = load_pdists(opt.pdist_files);
        if (dists.empty()) dists.push_back(build_pdist(opt.model));
        const MetricsReport report = rank_methods(dists);
        emit(opt, out, opt.format == "json" ? dump(io::to_json(report)) : io::metrics_csv(report));
    } else if (name == "simulate") {
        const Scenario scenario =
            io::scenario_from_json(io::parse_json(io::read_text(opt.scenario_file), opt.scenario_file));
        const auto methods = resolve_methods(opt.methods);
        const std::uint64_t seed = resolve_seed(opt.seed);
        const ExecOptions exec{opt.serial, opt.threads};
        ExperimentReport report;
        if (opt.mode == "type1") {
            if (opt.lrt) throw InvalidArgument("simulate: --lrt applies to --mode power");
            report = type1_experiment(scenario, methods, opt.n_grid, opt.alpha, opt.reps, seed, exec);
        } else {
            if (opt.alt_grid.empty()) throw InvalidArgument("simulate: --mode power needs --alt-grid");
            report = power_experiment(scenario, opt.alt_grid, methods, opt.lrt, opt.alpha, opt.reps, seed, exec);
        }
        if (opt.format == "json") {
            io::Json rows = io::Json::array();
            for (const auto& r : report.rows) {
                rows.push_back(io::Json{{"scenario", r.scenario}, {"method", r.method}, {"n", r.n},
                                        {"alt_param", r.alt_param}, {"alpha", r.alpha}, {"reps", r.reps},
                                        {"rejections", r.rejections}, {"proportion", r.proportion},
                                        {"mc_se", r.mc_se}, {"seed", r.seed}});
            }
            emit(opt, out, dump(io::Json{{"generator", report.generator}, {"rows", rows}}));
        } else {
            emit(opt, out, io::experiment_csv(report));
        }
    } else if (name == "example") {
        const auto results = gene_example();
        emit(opt, out, opt.format == "json" ? dump(io::to_json(results)) : io::gene_csv(results));
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combination of independent discrete p-values"};
    app.fallthrough();
    app.name(args.empty() ? "pcomb" : args.front());
    app.require_subcommand(1);
    Options opt;
    app.add_option("-o,--output", opt.output, "Write the result to this file instead of stdout");

    auto* pdist = app.add_subcommand("pdist", "Build a sided discrete p-value distribution (JSON)");
    add_model_options(pdist, opt.model);

    auto* adjust_cmd = app.add_subcommand("adjust", "Adjusted statistic of a p-value distribution (JSON)");
    adjust_cmd->add_option("--pdist", opt.pdist_files, "p-value distribution JSON file, or - for stdin")->required();
    adjust_cmd->add_option("--method", opt.methods, "fisher, pearson, george, stouffer, edgington (default: all)")
        ->delimiter(',');

    auto* combine_cmd = app.add_subcommand("combine", "Combine observed p-values (JSON)");
    combine_cmd->add_option("--input", opt.input, "Combine input JSON file, or - for stdin")->required();
    combine_cmd->add_option("--method", opt.methods, "Overrides the method in the input")->delimiter(',');

    auto* metrics_cmd = app.add_subcommand("metrics", "Method-selection metrics (CSV or JSON)");
    metrics_cmd->add_option("--pdist", opt.pdist_files, "p-value distribution JSON file(s); averaged when several");
    add_model_options(metrics_cmd, opt.model);
    metrics_cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo Type I error or power (CSV or JSON)");
    sim_cmd->add_option("--scenario", opt.scenario_file, "Scenario JSON file, or - for stdin")->required();
    sim_cmd->add_option("--mode", opt.mode, "type1 or power")->check(CLI::IsMember({"type1", "power"}))
        ->capture_default_str();
    sim_cmd->add_option("--methods", opt.methods, "Methods to evaluate (default: all)")->delimiter(',');
    sim_cmd->add_option("--n-grid", opt.n_grid, "Numbers of combined p-values (type1)")->delimiter(',');
    sim_cmd->add_option("--alt-grid", opt.alt_grid, "Alternative parameters (power)")->delimiter(',');
    sim_cmd->add_flag("--lrt", opt.lrt, "Add the likelihood-ratio comparator (geometric-iid only)");
    sim_cmd->add_option("--alpha", opt.alpha)->capture_default_str();
    sim_cmd->add_option("--reps", opt.reps)->capture_default_str();
    sim_cmd->add_option("--seed", opt.seed, fmt::format("Default: ${} or {}", kSeedVariable, kDefaultSeed));
    sim_cmd->add_option("--threads", opt.threads, "OpenMP threads (0 = default)");
    sim_cmd->add_flag("--serial", opt.serial, "Use the serial reference kernel");
    sim_cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* example_cmd = app.add_subcommand("example", "Built-in worked examples");
    example_cmd->add_option("name", opt.example, "gene")->required()->check(CLI::IsMember({"gene"}));
    example_cmd->add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        return dispatch(app, opt, out);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr); }

}  // namespace pcomb::cli
