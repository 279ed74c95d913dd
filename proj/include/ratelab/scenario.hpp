#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ratelab/certificate.hpp"
#include "ratelab/limits.hpp"

namespace ratelab {

enum class OutputFormat { json, csv, table };

OutputFormat output_format_from_name(const std::string& name);

// One experiment: a command plus its parameters, straight off the wire.
// A scenario file is either a single scenario object or
// {"scenarios": [...]}; objects without a "command" key take the supplied
// default (the CLI passes its subcommand name).
struct Scenario {
    std::string command;
    nlohmann::json params;

    static std::vector<Scenario> parse(const nlohmann::json& j,
                                       const std::string& default_command = "");
};

struct RunOptions {
    std::optional<Nat> cap;  // overrides the default search cap, not explicit params
    unsigned jobs = 1;
    ResourceLimits limits;
};

// Runs one scenario to a certificate. Raises config_error for malformed or
// inconsistent parameters, cap_exhausted/resource_error when a limit stops
// the run before a verdict; failed verdicts are values, not exceptions.
Certificate run_scenario(const Scenario& sc, const RunOptions& opts = {});

// Per-scenario result slot: a certificate, or the error that stopped it.
struct ScenarioOutcome {
    std::string command;
    std::optional<Certificate> certificate;
    std::string error_kind;  // "" | "config" | "resource" | "internal"
    std::string message;
};

struct BatchResult {
    std::vector<ScenarioOutcome> outcomes;  // ordered by scenario index

    // Worst outcome wins: config 3, failed verdict (or internal error) 1,
    // exhaustion 2, all-pass 0.
    int exit_code() const;
};

// Runs a batch through a worker pool of `opts.jobs` threads. Execution is
// per-scenario deterministic and results are reported by scenario index, so
// the thread count never shows in the output.
BatchResult run_batch(const std::vector<Scenario>& scenarios, const RunOptions& opts = {});

std::string render_batch(const BatchResult& batch, OutputFormat format);

// Re-runs the check a certificate records, from its stored inputs alone, and
// compares the fresh certificate field by field.
struct ReplayReport {
    bool agrees = false;
    std::string mismatch;  // first differing field; empty when agrees
    Certificate fresh;
};

ReplayReport replay_certificate(const Certificate& cert, const RunOptions& opts = {});

// Accepts a bare certificate object, an array of them, or the "results" /
// "certificates" wrappers render_batch and older runs emit.
std::vector<Certificate> certificates_from_json(const nlohmann::json& j);

}  // namespace ratelab
