#pragma once

#include <stdexcept>
#include <string>

namespace mkt {

/// Malformed or invalid input: bad files, shape violations, out-of-range
/// parameters. Maps to CLI exit code 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: non-convergence, indefinite matrices, non-finite
/// states. Maps to CLI exit code 2.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mkt
