#include "clockdimer/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace clockdimer {

Axis axis_from_string(const std::string& s) {
    if (s == "x" || s == "X") return Axis::X;
    if (s == "y" || s == "Y") return Axis::Y;
    if (s == "z" || s == "Z") return Axis::Z;
    throw std::invalid_argument("unknown axis: " + s);
}

std::string axis_to_string(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        case Axis::Z: return "z";
    }
    return "?";
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> diagonalize(const Eigen::MatrixXcd& h) {
    if (!is_hermitian(h, 1e-10))
        throw std::invalid_argument("diagonalize: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

FieldVector along(Axis axis, double b) {
    switch (axis) {
        case Axis::X: return {b, 0.0, 0.0};
        case Axis::Y: return {0.0, b, 0.0};
        case Axis::Z: return {0.0, 0.0, b};
    }
    return {};
}

LevelDiagram sample_levels(const std::function<Eigen::MatrixXcd(const FieldVector&)>& builder,
                           Axis axis, double b_min, double b_max, int steps, int n_levels) {
    if (steps < 3)
        throw std::invalid_argument("level_diagram: steps must be >= 3");
    LevelDiagram out;
    out.axis = axis;
    out.field_mT.reserve(steps);
    out.energies.reserve(steps);
    for (int i = 0; i < steps; ++i) {
        const double b = b_min + (b_max - b_min) * i / double(steps - 1);
        auto [w, v] = diagonalize(builder(along(axis, b)));
        out.field_mT.push_back(b);
        std::vector<double> row(w.data(), w.data() + std::min<int>(n_levels, int(w.size())));
        out.energies.push_back(std::move(row));
    }
    return out;
}

// Column index of |ab> in the lexicographic product basis, a,b in {+,-} given
// as m-basis composition (|+-| clock states of each monomer).
Eigen::VectorXcd product_clock_state(int sign1, int sign2) {
    auto clock = [](int sign) {
        Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
        v(0) = 1.0 / std::sqrt(2.0);
        v(2) = double(sign) / std::sqrt(2.0);
        return v;
    };
    const Eigen::Vector3cd a = clock(sign1), b = clock(sign2);
    Eigen::VectorXcd out(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out(3 * i + j) = a(i) * b(j);
    return out;
}

void fix_phase_against(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& ref,
                       Eigen::Ref<Eigen::VectorXcd> v) {
    const std::complex<double> ov = ref.dot(op * v); // <ref|op|v>
    const double mag = std::abs(ov);
    if (mag > 1e-14) v *= std::conj(ov) / mag;
}

} // namespace

LevelDiagram level_diagram(const MonomerParams& p, Axis axis, double b_min_mT,
                           double b_max_mT, int steps) {
    return sample_levels([&](const FieldVector& b) { return Eigen::MatrixXcd(monomer_hamiltonian(p, b)); },
                         axis, b_min_mT, b_max_mT, steps, 3);
}

LevelDiagram level_diagram(const DimerParams& d, Axis axis, double b_min_mT,
                           double b_max_mT, int steps, int n_levels) {
    return sample_levels([&](const FieldVector& b) { return dimer_hamiltonian(d, b); },
                         axis, b_min_mT, b_max_mT, steps, n_levels);
}

EffectiveModel extract_effective_model(const DimerParams& d) {
    d.validate();
    auto [w, v] = diagonalize(dimer_hamiltonian(d, {}));

    const double gap = w(4) - w(3);
    const double coupling = std::max(std::abs(d.j.j_perp), std::abs(d.j.j_zz));
    if (!(gap > 10.0 * coupling))
        throw TruncationError("extract_effective_model: manifold gap " + std::to_string(gap) +
                              " GHz does not clear 10x the exchange scale " +
                              std::to_string(coupling) + " GHz");

    EffectiveModel em;
    em.g = d.m1.g; // drive couples g*muB*(S1z+S2z); monomer g's are taken equal
    em.energies = w.head<4>();

    const double de = d.delta_e();
    if (de == 0.0)
        em.theta = d.j.j_zz == 0.0 ? 0.0 : (d.j.j_zz > 0 ? kPi / 4.0 : -kPi / 4.0);
    else
        em.theta = 0.5 * std::atan(2.0 * d.j.j_zz / de);

    // Middle-state labels: du is the state coupled to dd by S1z, reference
    // composition cos(theta)|+-> + sin(theta)|-+>.
    Eigen::MatrixXcd basis(9, 4);
    basis.col(0) = v.col(0);
    basis.col(3) = v.col(3);
    const Eigen::VectorXcd pm = product_clock_state(+1, -1) * std::cos(em.theta) +
                                product_clock_state(-1, +1) * std::sin(em.theta);
    const double o1 = std::abs(pm.dot(v.col(1)));
    const double o2 = std::abs(pm.dot(v.col(2)));
    const int idu = o2 > o1 ? 2 : 1; // tie -> lower index
    basis.col(1) = v.col(idu);
    basis.col(2) = v.col(idu == 2 ? 1 : 2);
    Eigen::Vector4d en(w(0), w(idu), w(idu == 2 ? 1 : 2), w(3));
    em.energies = en;

    // Phase gauge: dd's largest component real-positive, then chain the other
    // three through the drive operators so all four main matrix elements come
    // out real-positive.
    const Eigen::MatrixXcd s1z = drive_s1z();
    const Eigen::MatrixXcd s2z = drive_s2z();
    {
        int k = 0;
        basis.col(0).cwiseAbs().maxCoeff(&k);
        const std::complex<double> c = basis(k, 0);
        if (std::abs(c) > 1e-14) basis.col(0) *= std::conj(c) / std::abs(c);
    }
    fix_phase_against(s1z, basis.col(0), basis.col(1));
    fix_phase_against(s2z, basis.col(0), basis.col(2));
    fix_phase_against(s1z, basis.col(2), basis.col(3));
    em.basis = basis;

    em.m1 = (basis.adjoint() * s1z * basis);
    em.m2 = (basis.adjoint() * s2z * basis);
    em.me1_low = em.m1(0, 1).real();
    em.me1_high = em.m1(2, 3).real();
    em.me2_low = em.m2(0, 2).real();
    em.me2_high = em.m2(1, 3).real();

    em.omega1 = 0.5 * ((en(1) - en(0)) + (en(3) - en(2)));
    em.omega2 = 0.5 * ((en(2) - en(0)) + (en(3) - en(1)));
    em.delta = 0.5 * (en(1) + en(2) - en(0) - en(3));

    const double db = d.d_bar(), eb = d.e_bar();
    em.delta_closed_form = -2.0 * db * d.j.j_perp * d.j.j_perp / (db * db - eb * eb);
    return em;
}

PerturbativeStates perturbative_states(const DimerParams& d) {
    d.validate();
    const double jp = d.j.j_perp;
    if (!(std::abs(jp) < d.e_bar()))
        throw std::invalid_argument("perturbative_states: requires |J_perp| < Ebar");
    const double e_pp = 2.0 * (-d.d_bar() + d.e_bar());
    const double e_mm = 2.0 * (-d.d_bar() - d.e_bar());
    PerturbativeStates ps;
    ps.coeff_same_uu = 1.0 - jp * jp / (2.0 * e_pp * e_pp);
    ps.coeff_same_dd = 1.0 - jp * jp / (2.0 * e_mm * e_mm);
    ps.coeff_00_uu = jp / e_pp;
    ps.coeff_00_dd = jp / e_mm;
    ps.coeff_opp_uu = jp * jp / ((e_mm - e_pp) * e_pp);
    ps.coeff_opp_dd = -jp * jp / ((e_mm - e_pp) * e_mm);
    ps.shift_uu_GHz = jp * jp / (2.0 * (-d.d_bar() + d.e_bar()));
    ps.shift_dd_GHz = jp * jp / (2.0 * (-d.d_bar() - d.e_bar()));
    return ps;
}

double transition_field_derivative(const std::function<Eigen::MatrixXcd(const FieldVector&)>& builder,
                                   int lo, int hi, Axis axis, double b0_mT) {
    const double h = 0.01; // mT
    auto gap = [&](double b) {
        auto [w, v] = diagonalize(builder(along(axis, b0_mT + b)));
        return w(hi) - w(lo);
    };
    // Richardson extrapolation of the central difference.
    return (8.0 * (gap(h) - gap(-h)) - (gap(2.0 * h) - gap(-2.0 * h))) / (12.0 * h);
}

double clock_derivative_check(const MonomerParams& p, Axis axis) {
    auto builder = [&](const FieldVector& b) { return Eigen::MatrixXcd(monomer_hamiltonian(p, b)); };
    return std::abs(transition_field_derivative(builder, 0, 1, axis));
}

double clock_derivative_check(const DimerParams& d, Axis axis) {
    auto builder = [&](const FieldVector& b) { return dimer_hamiltonian(d, b); };
    double worst = 0.0;
    for (int lo = 0; lo < 4; ++lo)
        for (int hi = lo + 1; hi < 4; ++hi)
            worst = std::max(worst, std::abs(transition_field_derivative(builder, lo, hi, axis)));
    return worst;
}

double zeeman_control_derivative(double g, Axis axis, double bias_mT) {
    const auto s = spin1_operators();
    auto builder = [&](const FieldVector& b) {
        return Eigen::MatrixXcd(g * kMuBOverH_GHz_per_mT *
                                (b.bx * s.sx + b.by * s.sy + b.bz * s.sz));
    };
    return std::abs(transition_field_derivative(builder, 0, 1, axis, bias_mT));
}

SingleQubitErrorEstimates single_qubit_error_estimates(const DimerParams& d,
                                                       const EffectiveModel& em) {
    SingleQubitErrorEstimates est;
    est.mismatch1 = em.me1_low - em.me1_high;
    est.mismatch2 = em.me2_low - em.me2_high;
    est.scale_jperp = d.j.j_perp * d.j.j_perp / (d.d_bar() * d.e_bar());
    const double de = d.delta_e();
    est.scale_jzz = de == 0.0 ? 0.0 : d.j.j_zz / de;
    return est;
}

} // namespace clockdimer
