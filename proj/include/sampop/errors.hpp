#pragma once

#include <stdexcept>
#include <string>

namespace sampop {

// Thrown for invalid configuration: bad parameters, violated preconditions,
// grids that do not cover an operator stencil. Maps to CLI exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a computation cannot meet its accuracy contract: non-finite
// evaluation, non-integrable tail model, solver breakdown, degenerate fits.
// Maps to CLI exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sampop
