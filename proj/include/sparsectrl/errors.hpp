#pragma once

#include <stdexcept>
#include <string>

namespace sparsectrl {

/// Instance exceeds the enumeration/brute-force budget of an operation.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// Stub matching failed repeatedly; caller should resample the degree sequence.
class matching_error : public std::runtime_error {
public:
    explicit matching_error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix decomposition did not converge.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs violate a model assumption required by a theorem-backed formula.
class model_assumption_error : public std::runtime_error {
public:
    explicit model_assumption_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sparsectrl
