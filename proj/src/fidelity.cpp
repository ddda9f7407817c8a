#include "clockdimer/fidelity.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace clockdimer {

using namespace std::complex_literals;

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

struct Paulis {
    Eigen::Matrix2cd id, x, y, z;
    Paulis() {
        id = Eigen::Matrix2cd::Identity();
        x << 0, 1, 1, 0;
        y << 0, -1i, 1i, 0;
        z << 1, 0, 0, -1;
    }
};

void gauge_fix(Eigen::Vector4cd& v) {
    int k = 0;
    v.cwiseAbs().maxCoeff(&k);
    const std::complex<double> c = v(k);
    if (std::abs(c) > 1e-14) v *= std::conj(c) / std::abs(c);
}

} // namespace

std::vector<Eigen::Vector4cd> mub20() {
    const Paulis p;
    // Commuting-Pauli partition of the two-qubit Pauli group; each basis is the
    // joint eigenbasis of its pair, ordered by the eigenvalue of P1 + 2 P2.
    const std::pair<Eigen::Matrix4cd, Eigen::Matrix4cd> partitions[5] = {
        {kron2(p.z, p.id), kron2(p.id, p.z)},
        {kron2(p.x, p.id), kron2(p.id, p.x)},
        {kron2(p.y, p.id), kron2(p.id, p.y)},
        {kron2(p.x, p.y), kron2(p.y, p.z)},
        {kron2(p.y, p.x), kron2(p.z, p.y)},
    };
    std::vector<Eigen::Vector4cd> states;
    states.reserve(20);
    for (const auto& [a, b] : partitions) {
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(Eigen::Matrix4cd(a + 2.0 * b));
        for (int k = 0; k < 4; ++k) {
            Eigen::Vector4cd v = es.eigenvectors().col(k);
            gauge_fix(v);
            states.push_back(v);
        }
    }
    return states;
}

double fidelity_pure(const Eigen::Vector4cd& phi, const Eigen::Vector4cd& psi) {
    return std::norm(phi.dot(psi));
}

double fidelity_mixed(const Eigen::Vector4cd& phi, const Eigen::Matrix4cd& rho) {
    return (phi.dot(rho * phi)).real();
}

Eigen::Matrix4cd ideal_rotation(int channel, double phase) {
    if (channel != 1 && channel != 2)
        throw std::invalid_argument("ideal_rotation: channel must be 1 or 2");
    Eigen::Matrix2cd m;
    m << 0, std::exp(1i * phase), std::exp(-1i * phase), 0;
    // m^2 = I, so exp(-i pi/4 m) = (I - i m)/sqrt(2) exactly.
    const Eigen::Matrix2cd g =
        (Eigen::Matrix2cd::Identity() - 1i * m) / std::sqrt(2.0);
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    return channel == 1 ? kron2(id, g) : kron2(g, id);
}

Eigen::Matrix4cd ideal_gate(const std::string& name) {
    std::string n;
    for (char c : name) n.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    if (n == "cnot") {
        Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
        u(0, 0) = 1.0;
        u(2, 2) = 1.0;
        u(1, 3) = 1.0;
        u(3, 1) = 1.0;
        return u;
    }
    const bool bar = n.size() > 2 && n.substr(2) == "bar";
    if ((n.size() == 2 || bar) && (n[0] == 'x' || n[0] == 'y') &&
        (n[1] == '1' || n[1] == '2')) {
        double phase = n[0] == 'x' ? 0.0 : kPi / 2.0;
        if (bar) phase += kPi;
        return ideal_rotation(n[1] - '0', phase);
    }
    throw std::invalid_argument("ideal_gate: unknown gate name '" + name + "'");
}

FidelityReport average_gate_fidelity(const Schedule& sched, const EffectiveModel& em,
                                     const Eigen::Matrix4cd& ideal,
                                     const std::optional<DephasingRates>& rates) {
    FidelityReport report;
    report.gate = sched.name;
    report.open_system = rates.has_value();
    if (rates) report.rates = *rates;

    const auto inputs = mub20();
    report.per_state.reserve(inputs.size());
    if (rates && (rates->gamma1 != 0.0 || rates->gamma2 != 0.0)) {
        // One Liouvillian exponential per segment, shared across the 20 inputs.
        Eigen::MatrixXcd prop = Eigen::MatrixXcd::Identity(16, 16);
        for (const auto& seg : sched.segments)
            prop = (liouvillian(rwa_hamiltonian(em, seg), *rates) * seg.duration_ns).exp() *
                   prop;
        for (const auto& psi : inputs) {
            const Eigen::Matrix4cd rho0 = psi * psi.adjoint();
            const Eigen::VectorXcd vec =
                prop * Eigen::Map<const Eigen::VectorXcd>(rho0.data(), 16);
            const Eigen::Matrix4cd rho = Eigen::Map<const Eigen::Matrix4cd>(vec.data());
            report.per_state.push_back(fidelity_mixed(Eigen::Vector4cd(ideal * psi), rho));
        }
    } else {
        const Eigen::Matrix4cd u = schedule_unitary(sched, em);
        for (const auto& psi : inputs)
            report.per_state.push_back(
                fidelity_pure(Eigen::Vector4cd(ideal * psi), Eigen::Vector4cd(u * psi)));
    }

    report.average = 0.0;
    for (double f : report.per_state) report.average += f;
    report.average /= double(report.per_state.size());
    report.min = *std::min_element(report.per_state.begin(), report.per_state.end());
    report.max = *std::max_element(report.per_state.begin(), report.per_state.end());
    return report;
}

double average_fidelity(const Schedule& sched, const EffectiveModel& em,
                        const Eigen::Matrix4cd& ideal) {
    return average_gate_fidelity(sched, em, ideal).average;
}

} // namespace clockdimer
