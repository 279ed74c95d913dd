#pragma once

#include "ratelab/numbers.hpp"

namespace ratelab {

// Explicit resource configuration. Exceeding a limit raises resource_error,
// a distinct outcome from a failed verdict: the checks never silently
// truncate work.
struct ResourceLimits {
    Nat max_span = 5'000'000;        // longest enumerable range (windows, truncations, prefix fills)
    Nat max_iterations = 1'000'000;  // functional iteration count (rate bounds)
    Nat max_value_bits = 4'000'000;  // size guard for iterated naturals

    void check_span(const Nat& span, const char* what) const;
    void check_value(const Nat& value, const char* what) const;
};

inline void ResourceLimits::check_span(const Nat& span, const char* what) const {
    if (span > max_span)
        throw resource_error(std::string(what) + ": range of length " + span.str() +
                             " exceeds limit " + max_span.str());
}

inline void ResourceLimits::check_value(const Nat& value, const char* what) const {
    if (value > 0 && Nat(boost::multiprecision::msb(value)) + 1 > max_value_bits)
        throw resource_error(std::string(what) + ": value exceeds " + max_value_bits.str() +
                             " bits");
}

}  // namespace ratelab
