#pragma once

#include <stdexcept>
#include <string>

namespace qisog {

// Precondition violations map to CLI exit code 1, cap exhaustion to 2.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails; always a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond) throw PreconditionError(msg);
}

inline void ensure(bool cond, const std::string& msg)
{
    if (!cond) throw InternalError(msg);
}

} // namespace qisog
