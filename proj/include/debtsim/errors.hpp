#ifndef DEBTSIM_ERRORS_HPP
#define DEBTSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace debtsim {

/// Violation of an operation contract (mismatched frame index, bad call order).
class ContractViolation : public std::logic_error {
public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Request exceeds a hard resource cap (e.g. exhaustive subset enumeration).
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace debtsim

#endif
