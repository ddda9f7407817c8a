#pragma once

#include "clockdimer/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace clockdimer {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Flat "[section]" + "key = value" run configuration. Defaults are the
// reference parameter set for the Cr7Mn green/purple heterodimer.
struct RunConfig {
    DimerParams dimer{{21.0, 1.9, 2.0}, {16.5, 2.6, 2.0}, {0.1, 0.05}};
    double drive_amplitude_mT = 1.0;
    std::vector<double> jzz_grid_MHz = {0.0, 50.0, 100.0};
    std::vector<double> t2_grid_us = {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
    double monomer_field_range_mT = 500.0;
    double dimer_field_range_mT = 50.0;
    int level_steps = 201;
    std::string out_dir = ".";
    std::uint64_t seed = 20260826;

    // Copy with J_zz replaced (MHz input, stored in GHz).
    DimerParams dimer_with_jzz_MHz(double jzz_MHz) const;

    std::string canonical_text() const;
    std::uint64_t hash() const; // FNV-1a over canonical_text()
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// "12-significant-digit, locale-independent" numeric formatting for outputs.
std::string format_number(double x);

// Parses a comma-separated list of four complex amplitudes ("a+bi" tokens,
// e.g. "i,0,0,1"), normalized; or the named preset "fig3" = (|uu>+i|dd>)/sqrt2.
Eigen::Vector4cd parse_state_spec(const std::string& spec);

std::string output_header(const RunConfig& cfg);

} // namespace clockdimer
