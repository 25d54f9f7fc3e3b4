#pragma once

#include <string>
#include <vector>

#include "nkl/config.hpp"

namespace nkl {

// One measured quantity. A metric passes when value <= tolerance; an
// infinite tolerance marks a reported-only quantity. reference carries the
// theoretical target where one exists, worst_input the offending probe id,
// lambda, or grid index for failed checks.
struct Metric {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    double reference = 0.0;
    std::string worst_input;

    bool ok() const;
};

struct VerificationReport {
    std::string scenario;
    bool pass = false;
    std::vector<Metric> metrics;
    std::string config_digest;
    std::string error;  // non-empty when the scenario aborted

    void finalize();  // sets pass from the metrics
};

const std::vector<std::string>& scenario_names();

VerificationReport run_scenario(const std::string& name, const RunConfig& cfg);

// Runs every scenario in registry order; per-scenario errors are captured in
// the report rather than aborting the sweep.
std::vector<VerificationReport> run_all(const RunConfig& cfg);

// One CSV per scenario plus a combined summary.json in cfg.output_dir.
void write_reports(const std::vector<VerificationReport>& reports, const RunConfig& cfg);

std::string summary_json(const std::vector<VerificationReport>& reports, const RunConfig& cfg);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace nkl
