#pragma once

#include "ratelab/gap.hpp"
#include "ratelab/numbers.hpp"

namespace ratelab {

// Inclusive index window [lo; hi], empty when hi < lo. Every module builds
// windows through the two helpers below; nothing re-derives the endpoint
// arithmetic.
struct Window {
    Nat lo;
    Nat hi;

    bool empty() const { return hi < lo; }
    Nat size() const { return empty() ? Nat(0) : Nat(hi - lo + 1); }
    bool contains(const Nat& i) const { return lo <= i && i <= hi; }
};

enum class WindowMode {
    anchored,  // [n; n + g(n)] -- the metastability shape, never empty
    direct,    // [n; g(n)]     -- the logical-equivalence shape, empty when g(n) < n
};

inline Window anchored_window(const Nat& n, const GapFunction& g) { return Window{n, n + g(n)}; }

inline Window direct_window(const Nat& n, const GapFunction& g) { return Window{n, g(n)}; }

inline Window make_window(WindowMode mode, const Nat& n, const GapFunction& g) {
    return mode == WindowMode::anchored ? anchored_window(n, g) : direct_window(n, g);
}

inline const char* window_mode_name(WindowMode mode) {
    return mode == WindowMode::anchored ? "anchored" : "direct";
}

inline WindowMode window_mode_from_name(const std::string& name) {
    if (name == "anchored") return WindowMode::anchored;
    if (name == "direct") return WindowMode::direct;
    throw config_error("unknown window mode '" + name + "'");
}

}  // namespace ratelab
