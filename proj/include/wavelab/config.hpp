#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "wavelab/timestepper.hpp"

namespace wavelab {

struct InitialData {
    std::string type = "random_smooth";  // single_mode | random_smooth | from_checkpoint
    // single_mode
    int k = 1;
    double eps = 1e-2;
    std::string target = "W";  // W | Q
    // random_smooth
    std::uint64_t seed = 1;
    double decay_rate = 0.7;
    // from_checkpoint
    std::string path;
};

struct RunConfig {
    std::size_t n_points = 256;
    double period = 2.0 * std::numbers::pi;
    PhysParams params;
    InitialData initial;
    StepperConfig stepper;
    std::string experiment = "simulate";
    std::string out_dir = "out";

    PeriodicGrid grid() const { return PeriodicGrid(n_points, period); }
};

/// Parses and validates a config file. Unknown keys are rejected; range
/// violations name the offending key. dt defaults from the rk4 CFL guard.
RunConfig load_config(const std::string& path);
RunConfig config_from_json_text(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

/// Applies a dotted-path override like "params.sigma=0.5".
void apply_override(RunConfig& cfg, const std::string& assignment);

WaveState build_initial_state(const RunConfig& cfg);

}  // namespace wavelab
