#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace lamlab {

// Bad input: even denominator where odd is required, crossing leaves, etc.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A period or depth exceeded the configured cap.
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal assertion about the combinatorics failed. Should never fire.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

struct Limits {
    int max_period = 22;
    int max_depth = 10;
};

namespace detail {
inline Limits& limits_storage() {
    static Limits l = [] {
        Limits v;
        if (const char* env = std::getenv("LAMLAB_MAX_PERIOD")) {
            try {
                int n = std::stoi(env);
                if (n >= 1) v.max_period = n;
            } catch (...) {
            }
        }
        return v;
    }();
    return l;
}
}  // namespace detail

// Process-wide caps. Set once at startup (the CLI does this before any work).
inline const Limits& limits() { return detail::limits_storage(); }
inline void set_limits(const Limits& l) { detail::limits_storage() = l; }

// Hard ceiling of the uint64 enumeration paths, independent of configuration.
inline constexpr int kHardPeriodCeiling = 62;

inline void require_period(int n, const char* what = "period") {
    if (n > limits().max_period || n > kHardPeriodCeiling)
        throw ResourceLimitError(std::string(what) + " " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(limits().max_period));
}

inline void require_depth(int d) {
    if (d > limits().max_depth)
        throw ResourceLimitError("depth " + std::to_string(d) + " exceeds cap " +
                                 std::to_string(limits().max_depth));
}

}  // namespace lamlab
