#include "clockdimer/evolve.hpp"
#include "clockdimer/fidelity.hpp"
#include "clockdimer/pulses.hpp"

#include <doctest.h>

using namespace clockdimer;

namespace {
const DimerParams kRef{{21.0, 1.9, 2.0}, {16.5, 2.6, 2.0}, {0.1, 0.05}};

DimerParams uncoupled() {
    DimerParams d = kRef;
    d.j = {0.0, 0.0};
    return d;
}
} // namespace

TEST_SUITE("pulses") {

TEST_CASE("rwa hamiltonian of a free segment") {
    const EffectiveModel em = extract_effective_model(kRef);
    const Eigen::Matrix4cd h = rwa_hamiltonian(em, free_evolution_segment(100.0));
    Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
    expect(1, 1) = em.delta;
    expect(2, 2) = em.delta;
    CHECK((h - expect).norm() < 1e-14);

    // equal to (delta/2)(I - sz1 sz2) up to nothing: projector identity
    const Eigen::Matrix4cd alt =
        0.5 * em.delta * (Eigen::Matrix4cd::Identity() - sigma_z1() * sigma_z2());
    CHECK((h - alt).norm() < 1e-14);
}

TEST_CASE("rwa hamiltonian drive elements in the uncoupled limit") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    Segment seg;
    seg.duration_ns = 1.0;
    seg.tones = {{1, 1.0, 0.0, 0.0}};
    const Eigen::Matrix4cd h = rwa_hamiltonian(em, seg);
    CHECK(is_hermitian(h, 1e-14));
    CHECK(h(0, 1).real() == doctest::Approx(13.9962449e-3).epsilon(1e-10));
    CHECK(h(2, 3).real() == doctest::Approx(13.9962449e-3).epsilon(1e-10));
    CHECK(std::abs(h(0, 2)) < 1e-12); // no cross coupling without exchange
    CHECK(std::abs(h(0, 0)) < 1e-12);
}

TEST_CASE("rwa hamiltonian rejects double tones") {
    const EffectiveModel em = extract_effective_model(kRef);
    Segment seg;
    seg.duration_ns = 1.0;
    seg.tones = {{1, 1.0, 0.0, 0.0}, {1, 0.5, 0.0, 0.0}};
    CHECK_THROWS_AS(rwa_hamiltonian(em, seg), std::invalid_argument);
}

TEST_CASE("pi/2 duration scaling") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    // quarter Rabi cycle at 1 mT with unit matrix element
    CHECK(pi2_duration(em, 1, 1.0) == doctest::Approx(8.9310).epsilon(1e-4));
    CHECK(pi2_duration(em, 1, 2.0) == doctest::Approx(0.5 * pi2_duration(em, 1, 1.0)));
}

TEST_CASE("pi/2 pulse splits population 0.5/0.5") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    for (int channel : {1, 2}) {
        Schedule s{"pi2", {pi2_segment(em, channel, 0.0)}};
        Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
        psi0(0) = 1.0;
        const Eigen::Vector4cd out = run_schedule_pure(s, em, psi0);
        const int partner = channel == 1 ? 1 : 2;
        CHECK(std::norm(out(0)) == doctest::Approx(0.5).epsilon(1e-6));
        CHECK(std::norm(out(partner)) == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("two pi/2 pulses transfer all population") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    const Segment p = pi2_segment(em, 2, 0.0);
    Schedule s{"pi", {p, p}};
    Eigen::Vector4cd psi0 = Eigen::Vector4cd::Zero();
    psi0(0) = 1.0;
    const Eigen::Vector4cd out = run_schedule_pure(s, em, psi0);
    CHECK(std::norm(out(2)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("four pi/2 pulses return the initial state") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    const Segment p = pi2_segment(em, 1, 0.7);
    Schedule s{"2pi", {p, p, p, p}};
    Eigen::Vector4cd psi0(0.5, 0.5, 0.5, 0.5);
    const Eigen::Vector4cd out = run_schedule_pure(s, em, psi0);
    CHECK(std::norm(psi0.dot(out)) > 1.0 - 1e-4);
}

TEST_CASE("phase selects orthogonal rotation axes") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    const Eigen::Matrix4cd ux = schedule_unitary({"x", {pi2_segment(em, 1, 0.0)}}, em);
    const Eigen::Matrix4cd uy = schedule_unitary({"y", {pi2_segment(em, 1, kPi / 2)}}, em);
    CHECK(average_fidelity({"x", {pi2_segment(em, 1, 0.0)}}, em, ideal_rotation(1, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(average_fidelity({"y", {pi2_segment(em, 1, kPi / 2)}}, em,
                           ideal_rotation(1, kPi / 2)) == doctest::Approx(1.0).epsilon(1e-10));
    // X and Y quarter rotations differ
    CHECK((ux - uy).norm() > 0.1);
}

TEST_CASE("two-tone segment factorizes in the uncoupled limit") {
    const EffectiveModel em = extract_effective_model(uncoupled());
    const Segment tt = two_tone_segment(em, kPi, 1.5 * kPi);
    const Eigen::Matrix4cd u = schedule_unitary({"tt", {tt}}, em);
    const Eigen::Matrix4cd expect = ideal_rotation(1, kPi) * ideal_rotation(2, 1.5 * kPi);
    // compare up to global phase
    const std::complex<double> ph = (expect.adjoint() * u).trace() / 4.0;
    CHECK((u - (ph / std::abs(ph)) * expect).norm() < 1e-8);
}

TEST_CASE("two-tone vs sequential at finite Jzz differs only slightly") {
    const EffectiveModel em = extract_effective_model(kRef);
    const Eigen::Matrix4cd ideal = ideal_rotation(1, kPi) * ideal_rotation(2, 1.5 * kPi);
    const double f_tt =
        average_fidelity({"tt", {two_tone_segment(em, kPi, 1.5 * kPi)}}, em, ideal);
    const double f_seq = average_fidelity(
        {"seq", {pi2_segment(em, 2, 1.5 * kPi), pi2_segment(em, 1, kPi)}}, em, ideal);
    CHECK(f_tt > 0.99);
    CHECK(f_seq > 0.99);
    CHECK(std::abs(f_tt - f_seq) < 0.01);
}

TEST_CASE("free evolution imprints the entangling phase") {
    const EffectiveModel em = extract_effective_model(kRef);
    const double t = 100.0;
    Eigen::Vector4cd psi0(0.5, 0.5, 0.5, 0.5);
    const Eigen::Vector4cd out =
        run_schedule_pure({"free", {free_evolution_segment(t)}}, em, psi0);
    const std::complex<double> expected =
        std::exp(std::complex<double>(0.0, -kTwoPi * em.delta * t));
    CHECK(std::abs(out(1) / out(0) - 0.5 * expected / 0.5) < 1e-12);
    CHECK(std::abs(out(3) - psi0(3)) < 1e-12);

    CHECK_THROWS_AS(free_evolution_segment(0.0), std::invalid_argument);
}

TEST_CASE("cnot schedule structure") {
    const EffectiveModel em = extract_effective_model(kRef);
    const Schedule s = cnot_schedule(em);
    REQUIRE(s.segments.size() == 5);
    CHECK(s.segments[0].tones.size() == 1);
    CHECK(s.segments[0].tones[0].channel == 2);
    CHECK(s.segments[1].tones.empty());
    CHECK(s.segments[1].duration_ns == doctest::Approx(924.0));
    CHECK(s.segments[2].tones.size() == 2);
    CHECK(s.segments[3].tones.size() == 2);
    CHECK(s.segments[4].tones[0].channel == 1);
    // ~924 ns free evolution plus four drive segments of ~9 ns
    CHECK(s.total_duration_ns() == doctest::Approx(924.0 + 4.0 * 8.93).epsilon(0.01));
}

TEST_CASE("no entanglement without J_perp") {
    DimerParams d = kRef;
    d.j.j_perp = 0.0;
    d.j.j_zz = 0.0;
    const EffectiveModel em = extract_effective_model(d);
    const Schedule s = cnot_schedule(em);
    const double f = average_fidelity(s, em, ideal_gate("cnot"));
    // separable dynamics cannot reach a CNOT
    CHECK(f < 0.9);
}

TEST_CASE("calibration is monotone and idempotent at the optimum") {
    const EffectiveModel em = extract_effective_model(kRef);
    const Eigen::Matrix4cd ideal = ideal_rotation(2, 0.0);
    Schedule s{"x2", {pi2_segment(em, 2, 0.0)}};
    auto scorer = [&](const Schedule& sc) { return average_fidelity(sc, em, ideal); };

    const auto cal = calibrate_schedule(s, em, scorer);
    CHECK(cal.fidelity_after >= cal.fidelity_before);
    CHECK(cal.fidelity_after == doctest::Approx(0.999283).epsilon(1e-4));

    const auto recal = calibrate_schedule(cal.schedule, em, scorer);
    CHECK(std::abs(recal.schedule.segments[0].duration_ns -
                   cal.schedule.segments[0].duration_ns) < 0.05);
    CHECK(recal.fidelity_after >= cal.fidelity_after - 1e-9);
}

} // TEST_SUITE
