#pragma once

#include "clockdimer/spectrum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace clockdimer {

struct Tone {
    int channel = 1;            // 1 -> drive at omega1 (S1z pair), 2 -> omega2
    double amplitude_mT = 1.0;  // field amplitude, >= 0
    double phase_rad = 0.0;     // rotation-axis phase: 0->X, pi/2->Y, pi->Xbar, 3pi/2->Ybar
    double detuning_GHz = 0.0;  // offset from the channel's drive frequency
};

struct Segment {
    double duration_ns = 0.0;
    std::vector<Tone> tones;    // empty -> free evolution; at most one per channel
};

struct Schedule {
    std::string name;
    std::vector<Segment> segments; // in time order
    double total_duration_ns() const;
};

// Interaction-picture Hamiltonian of one segment, 4x4, GHz, constant in time.
Eigen::Matrix4cd rwa_hamiltonian(const EffectiveModel& em, const Segment& seg);

// Quarter Rabi cycle: t = 1 / (8 f) with f = g (muB/h) B me_mean / 2.
double pi2_duration(const EffectiveModel& em, int channel, double amplitude_mT = 1.0);

Segment pi2_segment(const EffectiveModel& em, int channel, double phase,
                    double amplitude_mT = 1.0);

// Simultaneous pi/2 on both channels: shared duration (mean of the per-channel
// durations), per-channel amplitude rescaled so both complete pi/2 together.
Segment two_tone_segment(const EffectiveModel& em, double phase1, double phase2,
                         double amplitude_mT = 1.0);

Segment free_evolution_segment(double t_ns);

// Y2; free evolution t_J; [X1bar Y2bar]; [Y1bar X2]; X1 (time order).
Schedule cnot_schedule(const EffectiveModel& em, double t_j_ns = 924.0,
                       double amplitude_mT = 1.0);

struct CalibrationResult {
    Schedule schedule;
    double fidelity_before = 0.0;
    double fidelity_after = 0.0;
    std::vector<double> adjustments_ns; // per segment, calibrated - nominal
};

// Coordinate-wise golden-section search on the segment durations. Drive
// segments use a +/-10% window around the current value, free-evolution
// segments [0.2, 2] x nominal; resolution 0.01 ns; accept-only-improvement,
// iterated until the average-fidelity gain drops below 1e-6. Deterministic.
CalibrationResult calibrate_schedule(const Schedule& sched, const EffectiveModel& em,
                                     const std::function<double(const Schedule&)>& scorer);

} // namespace clockdimer
