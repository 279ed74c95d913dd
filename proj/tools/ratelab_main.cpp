#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ratelab/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ratelab::config_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json parse_json_file(const std::string& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ratelab::config_error(path + ": " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ratelab::config_error("cannot write '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic checks, searches, and rate bounds for finitary Abel and "
                 "Tauber statements"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::string format_name = "table";
    std::string cap_text;
    unsigned jobs = 1;
    std::uint64_t seed = 0;

    const std::pair<const char*, const char*> runners[] = {
        {"check-abel", "check premise and conclusion of a finite Abel instance"},
        {"check-tauber", "check premise and conclusion of a finite Tauber instance"},
        {"abel-rate", "derive a premise-true Abel instance from the composed rate"},
        {"tauber-rate", "derive a premise-true Tauber instance from the composed rate"},
        {"gamma", "closed-form metastability bound, optionally checked against the brute-force "
                  "least start"},
        {"specker", "verify the transform identities of a monotone base sequence"},
        {"search-n", "bounded search for the least window start satisfying a predicate"},
    };
    for (const auto& [name, desc] : runners) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--scenario", scenario_path, "scenario JSON file (a single scenario "
                        "object or {\"scenarios\": [...]})")
            ->required()
            ->envname("RATELAB_SCENARIO");
        sub->add_option("--out", out_path, "write output here instead of stdout")
            ->envname("RATELAB_OUT");
        sub->add_option("--format", format_name, "json, csv, or table")
            ->envname("RATELAB_FORMAT");
        sub->add_option("--cap", cap_text, "default search cap for scenarios that set none")
            ->envname("RATELAB_CAP");
        sub->add_option("--jobs", jobs, "worker threads for scenario batches")
            ->envname("RATELAB_JOBS");
        sub->add_option("--seed", seed, "reserved for fuzz drivers; runner commands are "
                        "deterministic and ignore it")
            ->envname("RATELAB_SEED");
    }

    std::string cert_path;
    CLI::App* verify = app.add_subcommand(
        "verify-cert", "re-run previously emitted certificates and check they reproduce");
    verify->add_option("file", cert_path, "certificate JSON: one object, an array, or a run's "
                       "json output")
        ->required();
    verify->add_option("--out", out_path, "write the replay report here instead of stdout")
        ->envname("RATELAB_OUT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }
    (void)seed;

    try {
        ratelab::RunOptions opts;
        if (!cap_text.empty()) opts.cap = ratelab::parse_nat(cap_text);
        opts.jobs = jobs;

        if (app.got_subcommand(verify)) {
            auto certs = ratelab::certificates_from_json(parse_json_file(cert_path));
            std::string report;
            bool all_agree = true;
            for (std::size_t i = 0; i < certs.size(); ++i) {
                ratelab::ReplayReport rep = ratelab::replay_certificate(certs[i], opts);
                report += "[" + std::to_string(i) + "] " + certs[i].command + ": " +
                          (rep.agrees ? "agree" : "MISMATCH (" + rep.mismatch + ")") + "\n";
                all_agree = all_agree && rep.agrees;
            }
            emit(report, out_path);
            return all_agree ? 0 : 1;
        }

        CLI::App* sub = app.get_subcommands().front();
        ratelab::OutputFormat format = ratelab::output_format_from_name(format_name);
        auto scenarios =
            ratelab::Scenario::parse(parse_json_file(scenario_path), sub->get_name());
        ratelab::BatchResult batch = ratelab::run_batch(scenarios, opts);
        emit(render_batch(batch, format), out_path);
        return batch.exit_code();
    } catch (const ratelab::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ratelab::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ratelab::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
