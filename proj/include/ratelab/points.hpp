#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratelab/numbers.hpp"
#include "ratelab/window.hpp"

namespace ratelab {

// A family of evaluation points x_m approaching 1 from below. Indices below
// domain_start() are not part of the family; predicates quantifying over a
// window clip its low end to the domain, while running past a finite
// family's end is a configuration error.
class PointFamily {
public:
    // x_m = 1 - 1/m for m >= 1.
    static PointFamily v();
    // x_m = 1 - 2^-m for m >= 0.
    static PointFamily dyadic();
    // A finite list x_0 .. x_{k-1}; every entry must lie in [0, 1).
    static PointFamily explicit_list(std::vector<Rational> xs);

    Rational point(const Nat& m) const;

    Nat domain_start() const;
    std::optional<Nat> domain_end() const;  // inclusive; empty for infinite families

    // The given window with its low end clipped to the domain. Throws
    // config_error when the high end runs past a finite family.
    Window clip(const Window& w) const;

    // Least p >= 1 with x_m <= 1 - 1/p.
    Nat p_for(const Nat& m) const;

    // Least p >= 1 valid for every point of the clipped window (1 when the
    // clipped window is empty).
    Nat uniform_p(const Window& w) const;

    bool is_v() const;
    const std::string& label() const;

    nlohmann::json descriptor() const;

private:
    struct Impl;
    explicit PointFamily(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
};

}  // namespace ratelab
