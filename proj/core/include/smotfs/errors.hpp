#pragma once

#include <stdexcept>
#include <string>

namespace smotfs {

/// Vector/matrix/index dimensions disagree with the frame configuration.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A symbol is not a point of the active constellation.
class InvalidSymbolError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its candidate cap (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace smotfs
