#pragma once

// Discrete test-statistic models and the sided discrete p-value distributions
// they induce.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcomb {

enum class Family {
    binomial,
    poisson,
    negative_binomial,
    geometric,
    hypergeometric,
    noncentral_hypergeometric,
    custom,
};

enum class Side { left, right, two };

std::string_view to_string(Family family);
std::string_view to_string(Side side);
Family parse_family(std::string_view name);
Side parse_side(std::string_view name);

using Params = std::map<std::string, double, std::less<>>;

/// Null distribution of a discrete test statistic over an explicit finite
/// support. Infinite-support families are truncated once the upper tail
/// drops below 1e-14; the residual mass is folded into the last point and
/// `tail_folded()` is set, so that point stands for "x or larger".
class StatisticModel {
public:
    StatisticModel(Family family, Params params, std::vector<std::int64_t> support, std::vector<double> pmf,
                   bool tail_folded);

    Family family() const noexcept { return family_; }
    const Params& params() const noexcept { return params_; }
    std::span<const std::int64_t> support() const noexcept { return support_; }
    std::span<const double> pmf() const noexcept { return pmf_; }
    std::size_t size() const noexcept { return support_.size(); }
    bool tail_folded() const noexcept { return tail_folded_; }

    /// Index of the support point an observation maps to for `side`. Values
    /// between support points (zero-mass outcomes) map to the neighbour that
    /// gives the same tail probability; throws InvalidArgument when x lies
    /// outside the support.
    std::size_t locate(std::int64_t x, Side side) const;

private:
    Family family_;
    Params params_;
    std::vector<std::int64_t> support_;
    std::vector<double> pmf_;
    bool tail_folded_;
};

/// Builds a named family. Parameter names:
///   binomial: trials, prob            poisson: lambda
///   negative-binomial: size, prob     (failures before the size-th success)
///   geometric: prob                   (trials up to the first success, x >= 1)
///   hypergeometric: population, successes, draws
///   noncentral-hypergeometric: population, successes, draws, odds (Fisher's)
StatisticModel make_statistic_model(Family family, const Params& params);

/// User-supplied PMF; must sum to 1 within 1e-9 and is renormalized.
StatisticModel make_custom_model(std::vector<std::int64_t> support, std::vector<double> pmf);

/// Ordered atoms 0 < F_1 < ... < F_m = 1 of a discrete p-value.
class DiscretePValueDist {
public:
    DiscretePValueDist(std::vector<double> atoms, Side side,
                       std::shared_ptr<const StatisticModel> provenance = nullptr);

    std::span<const double> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    double atom(std::size_t i) const { return atoms_[i]; }
    /// F_{i-1}, with F_{-1} read as 0.
    double lower(std::size_t i) const { return i == 0 ? 0.0 : atoms_[i - 1]; }
    double mass(std::size_t i) const { return atoms_[i] - lower(i); }
    Side side() const noexcept { return side_; }
    bool degenerate() const noexcept { return atoms_.size() == 1; }
    const StatisticModel* provenance() const noexcept { return provenance_.get(); }

    /// Index of the atom equal to `p` within `rel_tol` relative; throws
    /// InvalidArgument when no atom matches.
    std::size_t index_of(double p, double rel_tol = 1e-9) const;

private:
    std::vector<double> atoms_;
    Side side_;
    std::shared_ptr<const StatisticModel> provenance_;
};

struct PValueAtom {
    double value;
    std::size_t index;
};

/// A sided p-value distribution together with the atom each support point
/// of the model maps to.
struct SidedPValues {
    DiscretePValueDist dist;
    std::vector<std::size_t> atom_of;
};

SidedPValues sided_pvalues(const StatisticModel& model, Side side);

DiscretePValueDist pvalue_distribution(const StatisticModel& model, Side side);

PValueAtom observed_pvalue(const StatisticModel& model, Side side, std::int64_t x);

/// Distribution given directly by its atoms; carries no statistic model.
DiscretePValueDist custom_pvalue_distribution(std::vector<double> atoms, Side side);

/// Atoms obtained as running sums of the given cell masses.
DiscretePValueDist pvalue_distribution_from_masses(std::span<const double> masses, Side side = Side::left);

}  // namespace pcomb
