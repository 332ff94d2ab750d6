#pragma once

#include <stdexcept>
#include <string>

namespace eulerdiv {

// Argument outside an operation's domain.
using invalid_argument = std::invalid_argument;

// A mathematical precondition of the divergence machinery does not hold
// (for instance g(x0) == 0, so the first Euler step carries no noise).
class precondition_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw invalid_argument(what);
}

} // namespace detail
} // namespace eulerdiv
