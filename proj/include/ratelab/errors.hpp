#pragma once

#include <stdexcept>
#include <string>

namespace ratelab {

// Error taxonomy mirrors the CLI exit codes: config_error -> 3,
// resource_error (and cap_exhausted) -> 2. Verdict failures are values,
// not exceptions.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mathematically invalid argument (eps <= 0, p = 0, x outside [0, 1-1/p], ...).
struct domain_error : error {
    using error::error;
};

// Malformed descriptors, missing required bounds, violated declared bounds,
// points requested outside their family's domain.
struct config_error : error {
    using error::error;
};

// A configured resource limit was exceeded (window span, iterate size, ...).
struct resource_error : error {
    using error::error;
};

// A bounded search ran out of cap. Carries the stage so pipelines can report
// which search gave up; never fabricates a result.
struct cap_exhausted : resource_error {
    cap_exhausted(const std::string& stage_, const std::string& what_)
        : resource_error(what_), stage(stage_) {}
    std::string stage;
};

}  // namespace ratelab
