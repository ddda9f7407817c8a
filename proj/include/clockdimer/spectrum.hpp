#pragma once

#include "clockdimer/model.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace clockdimer {

// Thrown when the four-state truncation is not justified by the spectrum.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

enum class Axis { X, Y, Z };

Axis axis_from_string(const std::string& s);
std::string axis_to_string(Axis a);

// Eigenvalues ascending, eigenvectors as columns. Rejects non-Hermitian input.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> diagonalize(const Eigen::MatrixXcd& h);

struct LevelDiagram {
    Axis axis = Axis::Z;
    std::vector<double> field_mT;                // sample points
    std::vector<std::vector<double>> energies;   // per sample, ascending, GHz
};

LevelDiagram level_diagram(const MonomerParams& p, Axis axis, double b_min_mT,
                           double b_max_mT, int steps);
// Dimer variant keeps only the n_levels lowest levels (default: logical manifold).
LevelDiagram level_diagram(const DimerParams& d, Axis axis, double b_min_mT,
                           double b_max_mT, int steps, int n_levels = 4);

// The 4-state logical manifold. Basis order dd, du, ud, uu (ascending energy at
// the reference parameters); "channel 1" drives the S1z transitions
// dd<->du and ud<->uu, "channel 2" the S2z transitions dd<->ud and du<->uu.
struct EffectiveModel {
    Eigen::MatrixXcd basis;      // 9x4, columns dd,du,ud,uu, gauge-fixed
    Eigen::Vector4d energies;    // GHz
    double theta = 0.0;          // middle-state mixing angle, rad
    double delta = 0.0;          // detuning from the exact spectrum, GHz
    double delta_closed_form = 0.0; // -2 Dbar Jp^2/(Dbar^2-Ebar^2), cross-check only
    // Drive matrix elements in the logical basis (full 4x4, used by pulses).
    Eigen::Matrix4cd m1;         // <a|S1z|b>
    Eigen::Matrix4cd m2;         // <a|S2z|b>
    double me1_low = 0.0;        // S1z(dd,du)
    double me1_high = 0.0;       // S1z(ud,uu)
    double me2_low = 0.0;        // S2z(dd,ud)
    double me2_high = 0.0;       // S2z(du,uu)
    double omega1 = 0.0;         // drive frequency, mean of the S1z pair, GHz
    double omega2 = 0.0;         // mean of the S2z pair, GHz
    double g = 2.0;
};

EffectiveModel extract_effective_model(const DimerParams& d);

// Second-order compositions of uu/dd and the corresponding energy shifts.
struct PerturbativeStates {
    double coeff_same_uu, coeff_same_dd;   // on |++> / |-->
    double coeff_00_uu, coeff_00_dd;       // on |00>
    double coeff_opp_uu, coeff_opp_dd;     // on |--> / |++>
    double shift_uu_GHz, shift_dd_GHz;     // Jp^2 / (2(-Dbar +/- Ebar))
};

PerturbativeStates perturbative_states(const DimerParams& d);

// d(E_hi - E_lo)/dB at field offset b0 along `axis`, via Richardson
// second-order central differences with step 0.01 mT. GHz/mT.
double transition_field_derivative(const std::function<Eigen::MatrixXcd(const FieldVector&)>& builder,
                                   int lo, int hi, Axis axis, double b0_mT = 0.0);

// Max |df/dB| at B=0 over the monomer clock transition / the six
// intra-manifold dimer transitions.
double clock_derivative_check(const MonomerParams& p, Axis axis);
double clock_derivative_check(const DimerParams& d, Axis axis);

// Negative control: doublet split purely by the Zeeman term, evaluated at a
// small bias field (the splitting has a |B| kink at zero). Expected slope
// g*muB/h ~ 0.028 GHz/mT for g=2.
double zeeman_control_derivative(double g, Axis axis, double bias_mT = 0.1);

struct SingleQubitErrorEstimates {
    double mismatch1; // S1z(dd,du) - S1z(ud,uu)
    double mismatch2; // S2z(dd,ud) - S2z(du,uu)
    double scale_jperp; // Jp^2/(Dbar*Ebar)
    double scale_jzz;   // Jzz/DeltaE (0 when DeltaE == 0 and Jzz == 0)
};

SingleQubitErrorEstimates single_qubit_error_estimates(const DimerParams& d,
                                                       const EffectiveModel& em);

} // namespace clockdimer
