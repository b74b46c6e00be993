#pragma once

#include <stdexcept>
#include <string>

namespace crisp {

/// Malformed input: files, counts, parameters that fail validation before any
/// computation starts. The CLI maps this to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A request that is well-formed but cannot be satisfied by the data, e.g. a
/// constrained optimum with an empty feasible set. CLI exit code 4.
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crisp
