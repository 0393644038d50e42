#pragma once

#include <stdexcept>
#include <string>

namespace chain_eigen {

// Invalid argument values: malformed patterns, out-of-range indices,
// mismatched dimensions.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A requested object exceeds a configured size cap.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative solver did not reach its tolerance.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace chain_eigen
