#pragma once

#include "clockdimer/evolve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clockdimer {

// The 20 states of the five mutually unbiased bases of a 4-state system,
// grouped basis-by-basis, deterministic construction and phase gauge.
std::vector<Eigen::Vector4cd> mub20();

double fidelity_pure(const Eigen::Vector4cd& phi, const Eigen::Vector4cd& psi);
double fidelity_mixed(const Eigen::Vector4cd& phi, const Eigen::Matrix4cd& rho);

// Ideal pi/2 rotations X1, Y1, X1bar, Y1bar, X2, Y2, X2bar, Y2bar and CNOT
// (qubit 1 = the channel-1/omega1 qubit = control; qubit 2 = target).
Eigen::Matrix4cd ideal_gate(const std::string& name);

// G(phi) = exp(-i pi/4 (e^{i phi}|0><1| + e^{-i phi}|1><0|)); channel 1 acts on
// the low logical bit, channel 2 on the high one.
Eigen::Matrix4cd ideal_rotation(int channel, double phase);

struct FidelityReport {
    std::string gate;
    std::vector<double> per_state; // 20 values, MUB order
    double average = 0.0;
    double min = 0.0;
    double max = 0.0;
    DephasingRates rates;
    bool open_system = false;
};

FidelityReport average_gate_fidelity(const Schedule& sched, const EffectiveModel& em,
                                     const Eigen::Matrix4cd& ideal,
                                     const std::optional<DephasingRates>& rates = std::nullopt);

// Convenience closed-system scorer for calibration.
double average_fidelity(const Schedule& sched, const EffectiveModel& em,
                        const Eigen::Matrix4cd& ideal);

} // namespace clockdimer
