#include "clockdimer/evolve.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace clockdimer {

using namespace std::complex_literals;

DephasingRates DephasingRates::from_t2_us(double t2_us) {
    if (!(t2_us > 0.0))
        throw std::invalid_argument("DephasingRates: T2 must be positive");
    if (std::isinf(t2_us)) return {0.0, 0.0};
    const double gamma = 1.0 / (t2_us * 1000.0);
    return {gamma, gamma};
}

Eigen::Matrix4cd sigma_z1() {
    return Eigen::Vector4cd(-1.0, -1.0, 1.0, 1.0).asDiagonal();
}

Eigen::Matrix4cd sigma_z2() {
    return Eigen::Vector4cd(-1.0, 1.0, -1.0, 1.0).asDiagonal();
}

namespace {

Eigen::Matrix4cd segment_propagator(const Eigen::Matrix4cd& h, double t_ns) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    const Eigen::Vector4cd phases =
        (-1i * kTwoPi * t_ns * es.eigenvalues().cast<std::complex<double>>().array()).exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace

Eigen::Vector4cd propagate_segment_pure(const Eigen::Matrix4cd& h, double t_ns,
                                        const Eigen::Vector4cd& psi) {
    return segment_propagator(h, t_ns) * psi;
}

Eigen::Vector4cd run_schedule_pure(const Schedule& sched, const EffectiveModel& em,
                                   const Eigen::Vector4cd& psi0) {
    Eigen::Vector4cd psi = psi0;
    for (const auto& seg : sched.segments)
        psi = propagate_segment_pure(rwa_hamiltonian(em, seg), seg.duration_ns, psi);
    return psi;
}

Eigen::Matrix4cd schedule_unitary(const Schedule& sched, const EffectiveModel& em) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    for (const auto& seg : sched.segments)
        u = segment_propagator(rwa_hamiltonian(em, seg), seg.duration_ns) * u;
    return u;
}

Eigen::Matrix4cd lindblad_rhs(const Eigen::Matrix4cd& h, const Eigen::Matrix4cd& rho,
                              const DephasingRates& rates) {
    Eigen::Matrix4cd out = -1i * kTwoPi * (h * rho - rho * h);
    const Eigen::Matrix4cd ls[2] = {std::sqrt(rates.gamma1) / 2.0 * sigma_z1(),
                                    std::sqrt(rates.gamma2) / 2.0 * sigma_z2()};
    for (const auto& l : ls) {
        const Eigen::Matrix4cd ll = l.adjoint() * l;
        out += 2.0 * l * rho * l.adjoint() - rho * ll - ll * rho;
    }
    return out;
}

Eigen::MatrixXcd liouvillian(const Eigen::Matrix4cd& h, const DephasingRates& rates) {
    const Eigen::MatrixXcd id = Eigen::Matrix4cd::Identity();
    // vec(A X B) = (B^T kron A) vec(X), column stacking.
    Eigen::MatrixXcd l = -1i * kTwoPi * (kron(id, h) - kron(h.transpose(), id));
    const Eigen::Matrix4cd ls[2] = {std::sqrt(rates.gamma1) / 2.0 * sigma_z1(),
                                    std::sqrt(rates.gamma2) / 2.0 * sigma_z2()};
    for (const auto& lk : ls) {
        const Eigen::Matrix4cd ll = lk.adjoint() * lk;
        l += 2.0 * kron(lk.conjugate(), lk) - kron(id, ll) - kron(ll.transpose(), id);
    }
    return l;
}

Eigen::Matrix4cd run_schedule_lindblad(const Schedule& sched, const EffectiveModel& em,
                                       const Eigen::Matrix4cd& rho0,
                                       const DephasingRates& rates) {
    if (rates.gamma1 < 0.0 || rates.gamma2 < 0.0)
        throw std::invalid_argument("run_schedule_lindblad: negative dephasing rate");
    Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), 16);
    for (const auto& seg : sched.segments) {
        const Eigen::MatrixXcd prop =
            (liouvillian(rwa_hamiltonian(em, seg), rates) * seg.duration_ns).exp();
        vec = prop * vec;
    }
    Eigen::Matrix4cd rho = Eigen::Map<const Eigen::Matrix4cd>(vec.data());
    rho = 0.5 * (rho + rho.adjoint()).eval(); // scrub roundoff asymmetry
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    if (es.eigenvalues().minCoeff() < -1e-6)
        throw std::runtime_error("run_schedule_lindblad: positivity violated beyond 1e-6");
    return rho;
}

namespace {

template <typename State, typename Rhs>
State rk4_run(const Schedule& sched, const EffectiveModel& em, State y, double dt_ns,
              const Rhs& rhs) {
    for (const auto& seg : sched.segments) {
        const Eigen::Matrix4cd h = rwa_hamiltonian(em, seg);
        const long n = std::max<long>(1, std::lround(seg.duration_ns / dt_ns));
        const double dt = seg.duration_ns / double(n);
        for (long i = 0; i < n; ++i) {
            const State k1 = rhs(h, y);
            const State k2 = rhs(h, State(y + 0.5 * dt * k1));
            const State k3 = rhs(h, State(y + 0.5 * dt * k2));
            const State k4 = rhs(h, State(y + dt * k3));
            y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
    return y;
}

} // namespace

Eigen::Vector4cd rk4_schedule_pure(const Schedule& sched, const EffectiveModel& em,
                                   Eigen::Vector4cd psi, double dt_ns) {
    return rk4_run(sched, em, psi, dt_ns,
                   [](const Eigen::Matrix4cd& h, const Eigen::Vector4cd& p) {
                       return Eigen::Vector4cd(-1i * kTwoPi * (h * p));
                   });
}

Eigen::Matrix4cd rk4_schedule_density(const Schedule& sched, const EffectiveModel& em,
                                      Eigen::Matrix4cd rho, const DephasingRates& rates,
                                      double dt_ns) {
    return rk4_run(sched, em, rho, dt_ns,
                   [&](const Eigen::Matrix4cd& h, const Eigen::Matrix4cd& r) {
                       return lindblad_rhs(h, r, rates);
                   });
}

double full_space_validation(const DimerParams& d, const Schedule& sched, double dt_ns) {
    if (!(dt_ns > 0.0) || dt_ns > 1e-3)
        throw std::invalid_argument("full_space_validation: requires 0 < dt <= 0.001 ns");
    const EffectiveModel em = extract_effective_model(d);
    const Eigen::MatrixXcd h0 = dimer_hamiltonian(d, {});
    const Eigen::MatrixXcd s1z = drive_s1z();
    const Eigen::MatrixXcd s2z = drive_s2z();
    const double amp_coeff = em.g * kMuBOverH_GHz_per_mT;

    double leakage = 0.0;
    for (int col = 0; col < 4; ++col) {
        Eigen::VectorXcd psi = em.basis.col(col);
        double t0 = 0.0;
        for (const auto& seg : sched.segments) {
            const long n = std::max<long>(1, std::lround(seg.duration_ns / dt_ns));
            const double dt = seg.duration_ns / double(n);
            auto h_at = [&](double t) {
                Eigen::MatrixXcd h = h0;
                for (const auto& tone : seg.tones) {
                    const double omega =
                        (tone.channel == 1 ? em.omega1 : em.omega2) + tone.detuning_GHz;
                    const double b = tone.amplitude_mT *
                                     std::cos(kTwoPi * omega * t + tone.phase_rad);
                    h += amp_coeff * b * (tone.channel == 1 ? s1z : s2z);
                }
                return h;
            };
            auto rhs = [&](double t, const Eigen::VectorXcd& p) {
                return Eigen::VectorXcd(-1i * kTwoPi * (h_at(t) * p));
            };
            for (long i = 0; i < n; ++i) {
                const double t = t0 + i * dt;
                const Eigen::VectorXcd k1 = rhs(t, psi);
                const Eigen::VectorXcd k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1);
                const Eigen::VectorXcd k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2);
                const Eigen::VectorXcd k4 = rhs(t + dt, psi + dt * k3);
                psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            t0 += seg.duration_ns;
        }
        const Eigen::Vector4cd logical = em.basis.adjoint() * psi;
        leakage += psi.squaredNorm() - logical.squaredNorm();
    }
    return std::max(0.0, leakage / 4.0);
}

double trace_distance(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    const Eigen::Matrix4cd diff = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
        Eigen::Matrix4cd(0.5 * (diff + diff.adjoint())));
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

} // namespace clockdimer
