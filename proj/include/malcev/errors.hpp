#pragma once

#include <stdexcept>
#include <string>

namespace malcev {

/// A shipped constructor or solver failed its own self-test; the library
/// state cannot be trusted past this point.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A space expected to be a Lie subalgebra is not closed under commutator.
struct ClosureError : std::runtime_error {
    ClosureError(std::string msg, std::size_t left, std::size_t right)
        : std::runtime_error(std::move(msg)), left_index(left), right_index(right) {}
    std::size_t left_index;
    std::size_t right_index;
};

}  // namespace malcev
