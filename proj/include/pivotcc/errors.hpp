#pragma once

#include <stdexcept>
#include <string>

namespace pivotcc {

// Invalid argument or precondition violation. CLI exit code 2.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Problem size exceeds a documented enumeration cap. CLI exit code 3.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// File read/write or parse failure. CLI exit code 4.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by a budgeted oracle when the next query would exceed the budget.
// Distinct from parameter_error: the caller may catch it and stop gracefully.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pivotcc
