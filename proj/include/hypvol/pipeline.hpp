#pragma once

#include "hypvol/config.hpp"
#include "hypvol/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypvol {

enum class Command { validate, surface_info, renvol, wedge, anomaly };

std::string to_string(Command command);  // CLI spelling, e.g. "surface-info"
std::optional<Command> command_from_string(const std::string& name);

/// Process exit codes.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 1;
inline constexpr int validation = 2;
inline constexpr int numerical = 3;
}  // namespace exit_code

struct CsvFile {
    std::string name;
    std::string content;
};

struct RunResult {
    int exit_code = exit_code::ok;
    Report report;
    std::vector<CsvFile> csv;
};

/// Profile CSV with columns epsilon,lambda,vol,provenance.
std::string profile_csv(const std::vector<VolumeProfile>& profiles);

/// Runs one command. Errors never escape: they become status=error reports with error.kind,
/// error.message and, for validation failures, error.circles and error.pairings.
RunResult run(Command command, const Config& config);

}  // namespace hypvol
