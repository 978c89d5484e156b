#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcomb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input that violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical routine did not reach its tolerance. `cell` is the index of the
/// probability cell being processed, or npos when not applicable.
class ConvergenceError : public Error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ConvergenceError(const std::string& what, std::size_t cell = npos)
        : Error(what), cell_(cell) {}

    std::size_t cell() const noexcept { return cell_; }

private:
    std::size_t cell_;
};

}  // namespace pcomb
