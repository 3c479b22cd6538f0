#pragma once

#include <stdexcept>
#include <string>

namespace ayfun {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Grid too coarse for an exact band-limited product.
struct AliasRisk : Error {
    using Error::Error;
};

// Geometric halving exhausted without reaching a positive form.
struct PositivityUnreachable : Error {
    using Error::Error;
};

// Bad job configuration or violated precondition, detected before compute.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace ayfun
