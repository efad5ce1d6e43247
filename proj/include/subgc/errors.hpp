#pragma once

#include <stdexcept>
#include <string>

namespace subgc {

/// Bad flags, bad config files, out-of-range parameters. The CLI maps
/// this (and std::invalid_argument) to exit code 2.
struct UserError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace subgc
