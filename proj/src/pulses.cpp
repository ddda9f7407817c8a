#include "clockdimer/pulses.hpp"

#include <cmath>

namespace clockdimer {

double Schedule::total_duration_ns() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration_ns;
    return t;
}

Eigen::Matrix4cd rwa_hamiltonian(const EffectiveModel& em, const Segment& seg) {
    using namespace std::complex_literals;
    bool seen[3] = {false, false, false};
    for (const auto& tone : seg.tones) {
        if (tone.channel != 1 && tone.channel != 2)
            throw std::invalid_argument("rwa_hamiltonian: channel must be 1 or 2");
        if (seen[tone.channel])
            throw std::invalid_argument("rwa_hamiltonian: two tones on one channel");
        if (tone.amplitude_mT < 0.0)
            throw std::invalid_argument("rwa_hamiltonian: negative amplitude");
        seen[tone.channel] = true;
    }

    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    Eigen::Vector4d diag(0.0, em.delta, em.delta, 0.0);
    for (const auto& tone : seg.tones) {
        const std::complex<double> c =
            0.5 * em.g * kMuBOverH_GHz_per_mT * tone.amplitude_mT *
            std::exp(1i * tone.phase_rad);
        if (tone.channel == 1) {
            h(0, 1) += c * em.m1(0, 1);
            h(2, 3) += c * em.m1(2, 3);
            // Static residue of the S1z cross couplings inside the manifold;
            // responsible for the Jzz-dependent single-qubit error.
            h(0, 2) += c * em.m1(0, 2);
            h(1, 3) += c * em.m1(1, 3);
            diag(1) -= tone.detuning_GHz;
            diag(3) -= tone.detuning_GHz;
        } else {
            h(0, 2) += c * em.m2(0, 2);
            h(1, 3) += c * em.m2(1, 3);
            h(0, 1) += c * em.m2(0, 1);
            h(2, 3) += c * em.m2(2, 3);
            diag(2) -= tone.detuning_GHz;
            diag(3) -= tone.detuning_GHz;
        }
    }
    h += h.adjoint().eval();
    h += Eigen::Matrix4cd(diag.cast<std::complex<double>>().asDiagonal());
    return h;
}

double pi2_duration(const EffectiveModel& em, int channel, double amplitude_mT) {
    if (channel != 1 && channel != 2)
        throw std::invalid_argument("pi2_duration: channel must be 1 or 2");
    if (!(amplitude_mT > 0.0))
        throw std::invalid_argument("pi2_duration: amplitude must be positive");
    const double me = channel == 1 ? 0.5 * (em.me1_low + em.me1_high)
                                   : 0.5 * (em.me2_low + em.me2_high);
    const double rabi = em.g * kMuBOverH_GHz_per_mT * amplitude_mT * me / 2.0;
    return 1.0 / (8.0 * rabi);
}

Segment pi2_segment(const EffectiveModel& em, int channel, double phase,
                    double amplitude_mT) {
    Segment seg;
    seg.duration_ns = pi2_duration(em, channel, amplitude_mT);
    seg.tones.push_back({channel, amplitude_mT, phase, 0.0});
    return seg;
}

Segment two_tone_segment(const EffectiveModel& em, double phase1, double phase2,
                         double amplitude_mT) {
    const double t1 = pi2_duration(em, 1, amplitude_mT);
    const double t2 = pi2_duration(em, 2, amplitude_mT);
    Segment seg;
    seg.duration_ns = 0.5 * (t1 + t2);
    seg.tones.push_back({1, amplitude_mT * t1 / seg.duration_ns, phase1, 0.0});
    seg.tones.push_back({2, amplitude_mT * t2 / seg.duration_ns, phase2, 0.0});
    return seg;
}

Segment free_evolution_segment(double t_ns) {
    if (!(t_ns > 0.0))
        throw std::invalid_argument("free_evolution_segment: duration must be positive");
    return {t_ns, {}};
}

Schedule cnot_schedule(const EffectiveModel& em, double t_j_ns, double amplitude_mT) {
    Schedule s;
    s.name = "cnot";
    s.segments = {
        pi2_segment(em, 2, kPi / 2.0, amplitude_mT),             // Y2
        free_evolution_segment(t_j_ns),                          // U_J
        two_tone_segment(em, kPi, 1.5 * kPi, amplitude_mT),      // [X1bar Y2bar]
        two_tone_segment(em, 1.5 * kPi, 0.0, amplitude_mT),      // [Y1bar X2]
        pi2_segment(em, 1, 0.0, amplitude_mT),                   // X1
    };
    return s;
}

namespace {

// Golden-section maximization, deterministic, 0.01 ns resolution.
std::pair<double, double> golden_max(const std::function<double(double)>& f,
                                     double a, double b, double tol = 0.01) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

} // namespace

CalibrationResult calibrate_schedule(const Schedule& sched, const EffectiveModel& em,
                                     const std::function<double(const Schedule&)>& scorer) {
    (void)em;
    if (sched.segments.empty())
        throw std::invalid_argument("calibrate_schedule: empty schedule");

    CalibrationResult result;
    result.schedule = sched;
    result.fidelity_before = scorer(sched);

    std::vector<double> nominal;
    nominal.reserve(sched.segments.size());
    for (const auto& s : sched.segments) nominal.push_back(s.duration_ns);

    Schedule work = sched;
    double best = result.fidelity_before;
    for (int iter = 0; iter < 40; ++iter) {
        const double before_sweep = best;
        for (std::size_t i = 0; i < work.segments.size(); ++i) {
            const bool free_evo = work.segments[i].tones.empty();
            const double t0 = work.segments[i].duration_ns;
            const double lo = free_evo ? 0.2 * nominal[i] : 0.9 * t0;
            const double hi = free_evo ? 2.0 * nominal[i] : 1.1 * t0;
            auto f = [&](double t) {
                Schedule trial = work;
                trial.segments[i].duration_ns = t;
                return scorer(trial);
            };
            auto [x, fx] = golden_max(f, lo, hi);
            if (fx > best) {
                best = fx;
                work.segments[i].duration_ns = x;
            }
        }
        if (best - before_sweep < 1e-6) break;
    }

    result.schedule = work;
    result.fidelity_after = best;
    for (std::size_t i = 0; i < work.segments.size(); ++i)
        result.adjustments_ns.push_back(work.segments[i].duration_ns - nominal[i]);
    return result;
}

} // namespace clockdimer
