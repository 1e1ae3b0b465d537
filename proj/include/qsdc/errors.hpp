#pragma once

#include <stdexcept>
#include <string>

namespace qsdc {

/// Dimension or argument mismatch (unequal vector lengths, bad indices).
using dimension_error = std::invalid_argument;

/// Request exceeds a configured resource bound (qubit cap, census width).
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Protocol phase machine violation (operation called out of order).
class phase_error : public std::logic_error {
public:
    explicit phase_error(const std::string& what) : std::logic_error(what) {}
};

/// An internal consistency check failed (norm drift, tableau rank loss).
/// The CLI maps this to exit code 3.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace qsdc
