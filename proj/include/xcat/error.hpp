#pragma once

#include <stdexcept>
#include <string>

namespace xcat {

/// A request the engine does not support: bad descriptor, unsupported (K, q), invalid policy.
class UnsupportedError : public std::invalid_argument {
public:
    explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

/// A theorem hypothesis is violated (even-order q, non-restricted weight, field mismatch).
class HypothesisError : public std::invalid_argument {
public:
    explicit HypothesisError(const std::string& what) : std::invalid_argument(what) {}
};

/// A cache file is unreadable, has an unknown version or does not match its key.
class CacheError : public std::runtime_error {
public:
    explicit CacheError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check failed during construction.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace xcat
