#pragma once

// Job description, JSON input/output, the on-disk memo cache and the check
// command behind the toricdisc executable.

#include "toric/char_cycle.hpp"
#include "toric/dual_variety.hpp"
#include "toric/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric {

enum class Command { faces, volumes, euler, discriminant, charcycle, ic, check };

struct JobSpec
{
    Mode mode = Mode::polytope;
    std::vector<IntVector> points;
    Command command = Command::faces;

    bool oracle = false;
    std::size_t max_dim = 4;
    std::size_t max_points = 64;
    unsigned jobs = 1;
    /// Unset: normal in cone mode, general in polytope mode.
    std::optional<Route> route;
    CycleContext context = CycleContext::projective;
    /// Contents of the rho file for charcycle.
    std::optional<std::string> rho_json;
    std::size_t ic_n = 0;
    std::optional<std::string> cache_dir;
    std::optional<std::string> dump_regions;
};

struct JobResult
{
    int status = 0;
    std::string output;
    std::string error;
};

constexpr int exit_invalid_input = 2;
constexpr int exit_guard_exceeded = 3;
constexpr int exit_inconsistency = 4;

std::optional<Command> parse_command(const std::string& name);

/// Reads {"mode": ..., "points": [[...], ...]} into spec.mode / spec.points.
void parse_input(const std::string& text, JobSpec& spec);

/// Canonical serialization of the input, used as the cache key.
std::string canonical_input(const JobSpec& spec);

/// Runs one job. Library errors are mapped to exit statuses 2, 3, 4; the
/// output is byte-identical across runs and thread counts.
JobResult run_job(const JobSpec& spec);

} // namespace toric
