#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iafeas/model.hpp"

namespace iafeas::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kImproper = 3,
    kNotConverged = 4,
};

inline constexpr const char* kSweepHeader = "total_beams,proper,min_leakage,median_leakage,frac_converged";

/// Adds `extra` streams to `base` one at a time, cycling over users in index
/// order and skipping users already at min(M, N). Empty if they all are.
std::optional<SystemSpec> distribute_beams(const SystemSpec& base, int extra);

/// Entry point of the `iafeas` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iafeas::cli
