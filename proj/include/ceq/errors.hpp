#pragma once

#include <stdexcept>
#include <string>

namespace ceq {

// Bad scenario input: parse failures, missing or out-of-range fields.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A formula was evaluated outside its domain (negative delay, flow or cost).
// These indicate a bug upstream and are never clamped.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Root bracketing or conservation failed in one of the solvers.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ceq
