#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sampop/quadrature.hpp"

namespace sampop {

enum class SuiteKind { corollary, direct, inverse, smoothness_of_operator, properties };

struct KernelChoice {
    std::string family = "sinc";  // sinc | riesz | bspline | gaussian | irregular
    int order = 3;                // bspline only
    double riesz_s = 1.5;         // riesz only: fractional order
    double riesz_delta = 2.0;     // riesz only: flat-top exponent
};

struct ExperimentConfig {
    SuiteKind suite = SuiteKind::corollary;
    KernelChoice kernel;
    double p = 2.0;
    int r = 1;
    int s = 2;
    std::vector<double> ladder{8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
    std::vector<std::string> members;  // empty = whole zoo
    QuadratureSpec quad;
    std::string out_dir = "out";
    std::uint64_t seed = 2026;
    int jobs = 1;
    double ratio_bound = 50.0;
    double alpha_window = 0.1;
    double noise_floor = 2e-6;
    double delta = 0.25;  // properties suite: base scale for the moduli
};

// Parse JSON text and validate every field against the preconditions of the
// selected suite; throws config_error with a field-level message before any
// computation starts.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Re-check an already-parsed config (command-line overrides go through this).
void validate_config(const ExperimentConfig& cfg);

// Fixed-order serialization; the provenance hash is taken over this text.
std::string canonical_text(const ExperimentConfig& cfg);

std::string suite_name(SuiteKind suite);
std::string list_suites_text();

// "8:256" expands dyadically; "8,12,16,24" lists rungs explicitly.
std::vector<double> parse_ladder_arg(const std::string& arg);

}  // namespace sampop
