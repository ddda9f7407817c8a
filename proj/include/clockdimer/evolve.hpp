#pragma once

#include "clockdimer/pulses.hpp"

namespace clockdimer {

struct DephasingRates {
    double gamma1 = 0.0; // 1/ns, = 1/T2 of qubit 1
    double gamma2 = 0.0;

    static DephasingRates from_t2_us(double t2_us);
};

// Collapse-operator z matrices in the logical basis order (dd, du, ud, uu).
Eigen::Matrix4cd sigma_z1(); // diag(-1,-1,+1,+1)
Eigen::Matrix4cd sigma_z2(); // diag(-1,+1,-1,+1)

// psi' = exp(-i 2 pi H t) psi, exact via eigendecomposition.
Eigen::Vector4cd propagate_segment_pure(const Eigen::Matrix4cd& h, double t_ns,
                                        const Eigen::Vector4cd& psi);

Eigen::Vector4cd run_schedule_pure(const Schedule& sched, const EffectiveModel& em,
                                   const Eigen::Vector4cd& psi0);

// The full logical-space propagator of a schedule.
Eigen::Matrix4cd schedule_unitary(const Schedule& sched, const EffectiveModel& em);

// drho/dt = -i 2 pi [H, rho] + sum_i (2 L rho L+ - rho L+L - L+L rho),
// L_i = sqrt(gamma_i)/2 sigma_zi.
Eigen::Matrix4cd lindblad_rhs(const Eigen::Matrix4cd& h, const Eigen::Matrix4cd& rho,
                              const DephasingRates& rates);

// 16x16 superoperator in column-stacking convention.
Eigen::MatrixXcd liouvillian(const Eigen::Matrix4cd& h, const DephasingRates& rates);

// Exact per-segment propagation by exponentiating the Liouvillian.
Eigen::Matrix4cd run_schedule_lindblad(const Schedule& sched, const EffectiveModel& em,
                                       const Eigen::Matrix4cd& rho0,
                                       const DephasingRates& rates);

// Independent fixed-step RK4 integrators (test oracles).
Eigen::Vector4cd rk4_schedule_pure(const Schedule& sched, const EffectiveModel& em,
                                   Eigen::Vector4cd psi, double dt_ns);
Eigen::Matrix4cd rk4_schedule_density(const Schedule& sched, const EffectiveModel& em,
                                      Eigen::Matrix4cd rho, const DephasingRates& rates,
                                      double dt_ns);

// Integrates the 9-dim lab-frame dynamics of the schedule (tones reconstructed
// as cos(2 pi (omega_ch + detuning) t + phase) drives on S1z/S2z) for each
// logical basis state; returns the mean final population outside the manifold.
double full_space_validation(const DimerParams& d, const Schedule& sched,
                             double dt_ns = 5e-4);

double trace_distance(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b);

} // namespace clockdimer
