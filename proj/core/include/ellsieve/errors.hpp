#pragma once

#include <stdexcept>
#include <string>

namespace ellsieve {

// computation refused because it would exceed a configured budget
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// an internal identity that must hold exactly failed; indicates a bug
// or a convention violation, never a recoverable condition
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ellsieve
