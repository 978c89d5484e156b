#pragma once

#include <array>
#include <string_view>

namespace pcomb {

enum class Method { fisher, pearson, george, stouffer, edgington, generic };

/// Which argument the continuous quantile G^-1 receives: P itself or 1 - P.
enum class Orientation { direct, reflected };

/// Rejection tail of the combined statistic.
enum class Tail { upper, lower };

struct MethodSpec {
    Method method;
    Orientation orientation;
    double mean;      // E[Y] of one continuous term
    double variance;  // Var[Y] of one continuous term
    Tail tail;
};

/// The five closed-form methods, in the order used to break ties.
inline constexpr std::array<Method, 5> kMethods = {Method::fisher, Method::pearson, Method::george,
                                                   Method::stouffer, Method::edgington};

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
std::string_view to_string(Tail tail);

/// Throws InvalidArgument for Method::generic, which has no fixed law.
MethodSpec method_spec(Method method);

struct Moments {
    double mean;
    double variance;
};

Moments continuous_moments(Method method);

}  // namespace pcomb
