#include "clockdimer/model.hpp"

#include <cmath>

namespace clockdimer {

void MonomerParams::validate() const {
    if (!(D > 0.0) || !(E > 0.0))
        throw std::invalid_argument("MonomerParams: D and E must be positive");
    if (!(D > E))
        throw std::invalid_argument("MonomerParams: requires D > E");
    if (!std::isfinite(g) || g == 0.0)
        throw std::invalid_argument("MonomerParams: bad g-factor");
}

void DimerParams::validate() const {
    m1.validate();
    m2.validate();
    if (!std::isfinite(j.j_perp) || !std::isfinite(j.j_zz))
        throw std::invalid_argument("DimerParams: non-finite exchange couplings");
}

bool DimerParams::couplings_in_validity_regime() const {
    const double emin = std::min(m1.E, m2.E);
    return std::abs(j.j_perp) < emin && std::abs(j.j_zz) < emin;
}

Spin1Operators spin1_operators() {
    using namespace std::complex_literals;
    const double r2 = std::sqrt(2.0);
    Eigen::Matrix3cd sp = Eigen::Matrix3cd::Zero();
    sp(0, 1) = r2;
    sp(1, 2) = r2;
    Spin1Operators ops;
    ops.sx = 0.5 * (sp + sp.adjoint());
    ops.sy = (sp - sp.adjoint()) / 2.0i;
    ops.sz = Eigen::Vector3cd(1.0, 0.0, -1.0).asDiagonal();
    return ops;
}

Eigen::Matrix3cd monomer_hamiltonian(const MonomerParams& p, const FieldVector& b) {
    p.validate();
    const auto s = spin1_operators();
    const double zc = p.g * kMuBOverH_GHz_per_mT;
    return -p.D * s.sz * s.sz + p.E * (s.sx * s.sx - s.sy * s.sy) +
           zc * (b.bx * s.sx + b.by * s.sy + b.bz * s.sz);
}

namespace {

Eigen::MatrixXcd kron9(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
    Eigen::MatrixXcd out(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return out;
}

} // namespace

Eigen::MatrixXcd dimer_hamiltonian(const DimerParams& d, const FieldVector& b) {
    d.validate();
    const auto s = spin1_operators();
    const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
    Eigen::MatrixXcd h = kron9(monomer_hamiltonian(d.m1, b), id) +
                         kron9(id, monomer_hamiltonian(d.m2, b));
    h += d.j.j_perp * (kron9(s.sx, s.sx) + kron9(s.sy, s.sy));
    h += d.j.j_zz * kron9(s.sz, s.sz);
    return h;
}

Eigen::MatrixXcd drive_s1z() {
    const auto s = spin1_operators();
    return kron9(s.sz, Eigen::Matrix3cd::Identity());
}

Eigen::MatrixXcd drive_s2z() {
    const auto s = spin1_operators();
    return kron9(Eigen::Matrix3cd::Identity(), s.sz);
}

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(m.norm(), 1.0);
    return (m - m.adjoint()).norm() <= rel_tol * scale;
}

} // namespace clockdimer
