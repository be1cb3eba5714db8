#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pgf::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

struct ScalingOptions {
    std::vector<std::size_t> sizes;
    std::size_t seeds = 5;
    double cross = 0.3;
    /// Passes over the whole ladder; each instance keeps its fastest run.
    std::size_t repeat = 1;
    unsigned jobs = 1;
    std::uint64_t seed_base = 1;
};

/// Means over the seeds of one size. Seconds cover find_pgf_partition only.
struct ScalingPoint {
    std::size_t n = 0;
    double m = 0, crossings = 0;
    double seconds = 0;
    double reattach_work = 0;
    /// forest_size == crossing_count on every seed.
    bool forest_ok = true;
};

std::vector<ScalingPoint> measure_scaling(const ScalingOptions& options);

/// Runs the `pgf` command line. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pgf::cli
