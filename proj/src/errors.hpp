// errors.hpp: exception types shared across the library.

#pragma once

#include <stdexcept>
#include <string>

namespace qotto {

// Invalid or inconsistent user-supplied configuration (files, keys, flags).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-Hermitian input, solver breakdown, NaN propagation.
class NumericError : public std::runtime_error {
  public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qotto
