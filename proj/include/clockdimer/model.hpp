#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace clockdimer {

// Unit system: energies as ordinary frequencies (E/h) in GHz, time in ns,
// magnetic fields in mT. Any phase accumulated in time evolution carries an
// explicit 2*pi.
inline constexpr double kMuBOverH_GHz_per_mT = 13.9962449e-3;  // mu_B/h
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct MonomerParams {
    double D;       // easy-axis anisotropy, GHz
    double E;       // transverse anisotropy, GHz
    double g = 2.0; // g-factor

    // Requires D > E > 0 so the |m|=1 doublet sits well below |0> and the
    // four-lowest-state truncation of the dimer makes sense.
    void validate() const;
};

struct ExchangeParams {
    double j_perp = 0.0; // transverse exchange, GHz
    double j_zz = 0.0;   // longitudinal exchange, GHz
};

struct DimerParams {
    MonomerParams m1;
    MonomerParams m2;
    ExchangeParams j;

    double d_bar() const { return 0.5 * (m1.D + m2.D); }
    double e_bar() const { return 0.5 * (m1.E + m2.E); }
    double delta_e() const { return m1.E - m2.E; }

    void validate() const;
    // Perturbative validity: |J_perp|, |J_zz| << min(E1, E2). Callers may
    // warn (not reject) when this returns false.
    bool couplings_in_validity_regime() const;
};

// Field components per spin in the shared principal-axis frame, mT.
struct FieldVector {
    double bx = 0.0;
    double by = 0.0;
    double bz = 0.0;
};

struct Spin1Operators {
    Eigen::Matrix3cd sx, sy, sz;
};

// Spin-1 matrices in the basis {|+1>, |0>, |-1>}.
Spin1Operators spin1_operators();

// H = -D Sz^2 + E (Sx^2 - Sy^2) + g mu_B (S.B)/h, GHz.
Eigen::Matrix3cd monomer_hamiltonian(const MonomerParams& p, const FieldVector& b);

// 9x9: H1 x I + I x H2 + Jp (SxSx + SySy) + Jzz SzSz, lexicographic product basis.
Eigen::MatrixXcd dimer_hamiltonian(const DimerParams& d, const FieldVector& b);

// Drive operators S1z x I and I x S2z in the 9-dim product basis.
Eigen::MatrixXcd drive_s1z();
Eigen::MatrixXcd drive_s2z();

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-12);

} // namespace clockdimer
