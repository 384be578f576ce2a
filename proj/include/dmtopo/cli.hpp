#pragma once

// Command-line front end: JSON config with dotted-path flag overrides,
// CSV/JSON emitters for spectra, traces, phase diagrams, and the
// cross-engine validation report.

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "dmtopo/phasemap.hpp"

namespace dmtopo::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitValidationFailure = 3;
inline constexpr int kExitIoError = 4;

struct RunConfig {
    // model
    double u = 0.6;
    double w = 0.0;
    double lambda = 1.0;
    int L = 8;
    // grid
    int n_k = 256;
    double t_max = 20.0;
    int n_samples = 2000;
    // initial
    double a = 1.0;
    double b = 2.0;
    double occupation_override = -1.0;  // >= 0 replaces C0 (error-path hook)
    // tolerances
    double ep_tol = 1e-8;
    double gap_tol = 1e-6;
    double engine_tol = 1e-6;
    // output
    std::string directory = ".";
    std::string format = "csv";
    // sweep
    double u_min = 0.0, u_max = 3.0;
    int u_resolution = 61;
    double w_min = 0.0, w_max = 1.0;
    int w_resolution = 41;

    nlohmann::json raw;  // canonical merged document (hashed into headers)
};

/// Merged config: defaults <- JSON file (optional) <- dotted overrides.
RunConfig load_config(const std::string& config_path,
                      const std::vector<std::string>& overrides);

std::string config_hash(const RunConfig& cfg);

int cmd_spectrum(const RunConfig& cfg);
int cmd_trace(const RunConfig& cfg);
int cmd_phase_diagram(const RunConfig& cfg);
int cmd_validate(const RunConfig& cfg);

/// Full argv entry point; returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace dmtopo::cli
