#include "pcomb/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "pcomb/error.hpp"
#include "pcomb/special.hpp"

namespace pcomb {

namespace {

constexpr double kTailCutoff = 1e-14;
constexpr double kTieTolerance = 1e-12;
constexpr std::size_t kMaxSupport = 50'000'000;

double require(const Params& params, std::string_view family, std::string_view name) {
    const auto it = params.find(name);
    if (it == params.end()) throw InvalidArgument(fmt::format("{}: missing parameter '{}'", family, name));
    if (!std::isfinite(it->second)) throw InvalidArgument(fmt::format("{}: parameter '{}' is not finite", family, name));
    return it->second;
}

std::int64_t require_count(const Params& params, std::string_view family, std::string_view name, double min) {
    const double v = require(params, family, name);
    if (v != std::floor(v) || v < min || v > 1e15) {
        throw InvalidArgument(fmt::format("{}: parameter '{}' must be an integer >= {}", family, name, min));
    }
    return static_cast<std::int64_t>(v);
}

double require_prob(const Params& params, std::string_view family, std::string_view name, bool allow_one) {
    const double v = require(params, family, name);
    if (!(v > 0.0 && (v < 1.0 || (allow_one && v == 1.0)))) {
        throw InvalidArgument(fmt::format("{}: parameter '{}' must lie in (0, 1{}", family, name, allow_one ? "]" : ")"));
    }
    return v;
}

// Turns log-masses into a normalized pmf, dropping points whose mass underflows.
StatisticModel from_log_masses(Family family, Params params, std::int64_t first, const std::vector<double>& logp,
                               bool tail_folded) {
    const double top = *std::max_element(logp.begin(), logp.end());
    std::vector<std::int64_t> support;
    std::vector<double> pmf;
    for (std::size_t i = 0; i < logp.size(); ++i) {
        const double m = std::exp(logp[i] - top);
        if (m > 0.0) {
            support.push_back(first + static_cast<std::int64_t>(i));
            pmf.push_back(m);
        }
    }
    const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
    for (double& m : pmf) m /= total;
    return StatisticModel(family, std::move(params), std::move(support), std::move(pmf), tail_folded);
}

// Finite support {first, ..., last} built from log(pmf(x+1)/pmf(x)); ratios
// keep mirrored outcomes of symmetric designs equal to rounding.
template <class LogRatio>
StatisticModel finite_by_ratios(Family family, Params params, std::int64_t first, std::int64_t last,
                                LogRatio log_ratio) {
    const auto count = static_cast<std::size_t>(last - first + 1);
    if (count > kMaxSupport) throw InvalidArgument(fmt::format("{}: support too large", to_string(family)));
    std::vector<double> logp(count);
    logp[0] = 0.0;
    for (std::size_t i = 1; i < count; ++i) {
        logp[i] = logp[i - 1] + log_ratio(first + static_cast<std::int64_t>(i) - 1);
    }
    return from_log_masses(family, std::move(params), first, logp, false);
}

// Infinite upper support starting at `first`. `log_pmf_next` advances the
// log-mass by one step; `upper_tail(x, cumulative, log_pmf_x)` returns
// P(X > x) or an upper bound on it.
template <class Next, class Tail>
StatisticModel infinite_support(Family family, Params params, std::int64_t first, double log_pmf_first,
                                Next log_pmf_next, Tail upper_tail) {
    std::vector<double> logp{log_pmf_first};
    double cumulative = std::exp(log_pmf_first);
    std::int64_t x = first;
    for (;;) {
        const double tail = upper_tail(x, cumulative, logp.back());
        if (tail < kTailCutoff) {
            // Fold the residual into the last point.
            const double last = std::exp(logp.back());
            logp.back() = std::log(last + std::max(tail, 0.0));
            break;
        }
        if (logp.size() >= kMaxSupport) {
            throw InvalidArgument(fmt::format("{}: support too large to tabulate", to_string(family)));
        }
        logp.push_back(log_pmf_next(x, logp.back()));
        ++x;
        cumulative += std::exp(logp.back());
    }
    return from_log_masses(family, std::move(params), first, logp, true);
}


}  // namespace

std::string_view to_string(Family family) {
    switch (family) {
        case Family::binomial: return "binomial";
        case Family::poisson: return "poisson";
        case Family::negative_binomial: return "negative-binomial";
        case Family::geometric: return "geometric";
        case Family::hypergeometric: return "hypergeometric";
        case Family::noncentral_hypergeometric: return "noncentral-hypergeometric";
        case Family::custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(Side side) {
    switch (side) {
        case Side::left: return "left";
        case Side::right: return "right";
        case Side::two: return "two";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::binomial, Family::poisson, Family::negative_binomial, Family::geometric,
                     Family::hypergeometric, Family::noncentral_hypergeometric, Family::custom}) {
        if (name == to_string(f)) return f;
    }
    throw InvalidArgument(fmt::format("unknown distribution family '{}'", name));
}

Side parse_side(std::string_view name) {
    if (name == "left") return Side::left;
    if (name == "right") return Side::right;
    if (name == "two" || name == "two-sided") return Side::two;
    throw InvalidArgument(fmt::format("unknown side '{}' (expected left, right or two)", name));
}

StatisticModel::StatisticModel(Family family, Params params, std::vector<std::int64_t> support,
                               std::vector<double> pmf, bool tail_folded)
    : family_(family),
      params_(std::move(params)),
      support_(std::move(support)),
      pmf_(std::move(pmf)),
      tail_folded_(tail_folded) {
    if (support_.empty() || support_.size() != pmf_.size()) {
        throw InvalidArgument("statistic model: support and pmf must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < pmf_.size(); ++i) {
        if (!(pmf_[i] > 0.0) || !std::isfinite(pmf_[i])) {
            throw InvalidArgument("statistic model: masses must be positive and finite");
        }
        if (i > 0 && support_[i] <= support_[i - 1]) {
            throw InvalidArgument("statistic model: support must be strictly increasing");
        }
    }
}

std::size_t StatisticModel::locate(std::int64_t x, Side side) const {
    if (x > support_.back()) {
        if (tail_folded_) return support_.size() - 1;
        throw InvalidArgument(fmt::format("observation {} lies above the support (max {})", x, support_.back()));
    }
    if (x < support_.front()) {
        throw InvalidArgument(fmt::format("observation {} lies below the support (min {})", x, support_.front()));
    }
    const auto it = std::lower_bound(support_.begin(), support_.end(), x);
    const auto idx = static_cast<std::size_t>(it - support_.begin());
    if (*it == x) return idx;
    switch (side) {
        case Side::left: return idx - 1;
        case Side::right: return idx;
        case Side::two: break;
    }
    throw InvalidArgument(fmt::format("observation {} has zero probability under the model", x));
}

StatisticModel make_statistic_model(Family family, const Params& params) {
    const auto name = to_string(family);
    switch (family) {
        case Family::binomial: {
            const auto n = require_count(params, name, "trials", 1);
            const double p = require_prob(params, name, "prob", false);
            const double lodds = std::log(p) - std::log1p(-p);
            return finite_by_ratios(family, params, 0, n, [&](std::int64_t x) {
                return std::log(static_cast<double>(n - x) / static_cast<double>(x + 1)) + lodds;
            });
        }
        case Family::poisson: {
            const double lambda = require(params, name, "lambda");
            if (!(lambda > 0.0)) throw InvalidArgument("poisson: lambda must be positive");
            const double log_lambda = std::log(lambda);
            return infinite_support(
                family, params, 0, -lambda,
                [&](std::int64_t x, double lp) { return lp + log_lambda - std::log(static_cast<double>(x + 1)); },
                [&](std::int64_t x, double, double) { return special::gamma_p(static_cast<double>(x + 1), lambda); });
        }
        case Family::negative_binomial: {
            const double r = require(params, name, "size");
            if (!(r > 0.0)) throw InvalidArgument("negative-binomial: size must be positive");
            const double p = require_prob(params, name, "prob", true);
            if (p == 1.0) return StatisticModel(family, params, {0}, {1.0}, false);
            const double log_q = std::log1p(-p);
            return infinite_support(
                family, params, 0, r * std::log(p),
                [&](std::int64_t x, double lp) {
                    const double xd = static_cast<double>(x);
                    return lp + std::log((xd + r) / (xd + 1.0)) + log_q;
                },
                [&](std::int64_t x, double cumulative, double lp) {
                    // Geometric-series bound once the mass ratios stay below max(rho, q) < 1.
                    const double xd = static_cast<double>(x);
                    const double rho = (xd + r) / (xd + 1.0) * (1.0 - p);
                    const double rho_max = std::max(rho, 1.0 - p);
                    double tail = 1.0 - cumulative;
                    if (rho_max < 1.0) tail = std::min(tail, std::exp(lp) * rho / (1.0 - rho_max));
                    return tail;
                });
        }
        case Family::geometric: {
            const double p = require_prob(params, name, "prob", true);
            if (p == 1.0) return StatisticModel(family, params, {1}, {1.0}, false);
            const double log_q = std::log1p(-p);
            return infinite_support(
                family, params, 1, std::log(p), [&](std::int64_t, double lp) { return lp + log_q; },
                [&](std::int64_t x, double, double) { return std::exp(static_cast<double>(x) * log_q); });
        }
        case Family::hypergeometric:
        case Family::noncentral_hypergeometric: {
            const auto N = require_count(params, name, "population", 1);
            const auto K = require_count(params, name, "successes", 0);
            const auto m = require_count(params, name, "draws", 0);
            if (K > N || m > N) throw InvalidArgument(fmt::format("{}: successes and draws cannot exceed population", name));
            double log_odds = 0.0;
            if (family == Family::noncentral_hypergeometric) {
                const double w = require(params, name, "odds");
                if (!(w > 0.0)) throw InvalidArgument("noncentral-hypergeometric: odds must be positive");
                log_odds = std::log(w);
            }
            const std::int64_t lo = std::max<std::int64_t>(0, m - (N - K));
            const std::int64_t hi = std::min(m, K);
            if (lo == hi) return StatisticModel(family, params, {lo}, {1.0}, false);
            return finite_by_ratios(family, params, lo, hi, [&](std::int64_t x) {
                const double num = static_cast<double>(K - x) * static_cast<double>(m - x);
                const double den = static_cast<double>(x + 1) * static_cast<double>(N - K - m + x + 1);
                return std::log(num / den) + log_odds;
            });
        }
        case Family::custom:
            throw InvalidArgument("custom models are built from an explicit support and pmf");
    }
    throw InvalidArgument("unknown family");
}

StatisticModel make_custom_model(std::vector<std::int64_t> support, std::vector<double> pmf) {
    if (support.empty() || support.size() != pmf.size()) {
        throw InvalidArgument("custom model: support and pmf must be non-empty and of equal length");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        if (!(pmf[i] >= 0.0) || !std::isfinite(pmf[i])) {
            throw InvalidArgument(fmt::format("custom model: pmf[{}] is negative or not finite", i));
        }
        if (i > 0 && support[i] <= support[i - 1]) {
            throw InvalidArgument("custom model: support must be strictly increasing");
        }
        total += pmf[i];
    }
    if (std::fabs(total - 1.0) > 1e-9) {
        throw InvalidArgument(fmt::format("custom model: pmf sums to {} (expected 1 within 1e-9)", total));
    }
    std::vector<std::int64_t> kept_support;
    std::vector<double> kept_pmf;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        if (pmf[i] > 0.0) {
            kept_support.push_back(support[i]);
            kept_pmf.push_back(pmf[i] / total);
        }
    }
    return StatisticModel(Family::custom, {}, std::move(kept_support), std::move(kept_pmf), false);
}

DiscretePValueDist::DiscretePValueDist(std::vector<double> atoms, Side side,
                                       std::shared_ptr<const StatisticModel> provenance)
    : atoms_(std::move(atoms)), side_(side), provenance_(std::move(provenance)) {
    if (atoms_.empty()) throw InvalidArgument("p-value distribution: no atoms");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const double a = atoms_[i];
        if (!std::isfinite(a)) throw InvalidArgument(fmt::format("p-value distribution: atom {} is not finite", i));
        if (i == 0 && !(a > 0.0)) throw InvalidArgument("p-value distribution: atoms must be positive");
        if (i > 0 && !(a > atoms_[i - 1])) {
            throw InvalidArgument(fmt::format("p-value distribution: atoms not strictly increasing at index {}", i));
        }
    }
    double& last = atoms_.back();
    if (std::fabs(last - 1.0) > 1e-12) {
        throw InvalidArgument(fmt::format("p-value distribution: largest atom is {} (expected 1)", last));
    }
    last = 1.0;
    if (atoms_.size() > 1 && !(atoms_[atoms_.size() - 2] < 1.0)) {
        throw InvalidArgument("p-value distribution: atoms not strictly increasing at the upper end");
    }
}

std::size_t DiscretePValueDist::index_of(double p, double rel_tol) const {
    const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p);
    auto matches = [&](std::vector<double>::const_iterator at) {
        return at != atoms_.end() && std::fabs(*at - p) <= rel_tol * std::max(std::fabs(p), std::fabs(*at));
    };
    if (matches(it)) return static_cast<std::size_t>(it - atoms_.begin());
    if (it != atoms_.begin() && matches(it - 1)) return static_cast<std::size_t>(it - 1 - atoms_.begin());
    throw InvalidArgument(fmt::format("p-value {} is not an atom of the declared distribution", p));
}

SidedPValues sided_pvalues(const StatisticModel& model, Side side) {
    const auto pmf = model.pmf();
    const std::size_t n = pmf.size();

    // Visit support points in the order their p-values increase and
    // accumulate masses; points in one group share an atom.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> group_end;  // exclusive end in `order` of each group
    switch (side) {
        case Side::left:
            for (std::size_t i = 1; i <= n; ++i) group_end.push_back(i);
            break;
        case Side::right:
            std::reverse(order.begin(), order.end());
            for (std::size_t i = 1; i <= n; ++i) group_end.push_back(i);
            break;
        case Side::two: {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pmf[a] < pmf[b]; });
            std::size_t start = 0;
            while (start < n) {
                const double base = pmf[order[start]];
                std::size_t end = start + 1;
                while (end < n && pmf[order[end]] - base <= kTieTolerance * pmf[order[end]]) ++end;
                group_end.push_back(end);
                start = end;
            }
            break;
        }
    }

    std::vector<double> atoms;
    std::vector<std::size_t> atom_of(n);
    atoms.reserve(group_end.size());
    double running = 0.0;
    std::size_t pos = 0;
    for (const std::size_t end : group_end) {
        double group_mass = 0.0;
        for (std::size_t k = pos; k < end; ++k) group_mass += pmf[order[k]];
        running += group_mass;
        const double value = (end == n) ? 1.0 : std::min(running, 1.0);
        // Masses too small to move the running sum merge with the previous atom.
        if (atoms.empty() || value > atoms.back()) atoms.push_back(value);
        for (std::size_t k = pos; k < end; ++k) atom_of[order[k]] = atoms.size() - 1;
        pos = end;
    }
    // The final atom was forced to 1; a preceding running sum that rounded to 1 is merged.
    if (atoms.size() > 1 && atoms[atoms.size() - 2] >= 1.0) {
        atoms.pop_back();
        for (auto& a : atom_of) a = std::min(a, atoms.size() - 1);
        atoms.back() = 1.0;
    }

    auto owner = std::make_shared<const StatisticModel>(model);
    return SidedPValues{DiscretePValueDist(std::move(atoms), side, std::move(owner)), std::move(atom_of)};
}

DiscretePValueDist pvalue_distribution(const StatisticModel& model, Side side) {
    return sided_pvalues(model, side).dist;
}

PValueAtom observed_pvalue(const StatisticModel& model, Side side, std::int64_t x) {
    const std::size_t k = model.locate(x, side);
    const SidedPValues sp = sided_pvalues(model, side);
    const std::size_t idx = sp.atom_of[k];
    return {sp.dist.atom(idx), idx};
}

DiscretePValueDist custom_pvalue_distribution(std::vector<double> atoms, Side side) {
    return DiscretePValueDist(std::move(atoms), side);
}

DiscretePValueDist pvalue_distribution_from_masses(std::span<const double> masses, Side side) {
    std::vector<double> atoms;
    atoms.reserve(masses.size());
    double running = 0.0;
    for (const double m : masses) {
        if (!(m > 0.0)) throw InvalidArgument("p-value distribution: cell masses must be positive");
        running += m;
        atoms.push_back(running);
    }
    return DiscretePValueDist(std::move(atoms), side);
}

}  // namespace pcomb
