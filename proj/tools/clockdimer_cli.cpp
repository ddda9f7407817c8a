// Command-line front-end: level diagrams, gate fidelity reports, parameter
// sweeps, and physics self-checks. Emits deterministic CSV/JSON data files.

#include "clockdimer/config.hpp"
#include "clockdimer/evolve.hpp"
#include "clockdimer/fidelity.hpp"
#include "clockdimer/pulses.hpp"
#include "clockdimer/spectrum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace clockdimer;

namespace {

int worker_count() {
    if (const char* env = std::getenv("CLOCKDIMER_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write output file: " + path.string());
    out << output_header(cfg);
    std::cout << "wrote " + (path.string()) + "\n";
    return out;
}

void write_levels_csv(std::ofstream& out, const LevelDiagram& ld) {
    out << "field_mT";
    for (std::size_t k = 0; k < ld.energies.front().size(); ++k)
        out << ",E" << k << "_GHz";
    out << "\n";
    for (std::size_t i = 0; i < ld.field_mT.size(); ++i) {
        out << format_number(ld.field_mT[i]);
        for (double e : ld.energies[i]) out << "," << format_number(e);
        out << "\n";
    }
}

json tone_json(const Tone& t) {
    return {{"channel", t.channel},
            {"amplitude_mT", t.amplitude_mT},
            {"phase_rad", t.phase_rad},
            {"detuning_GHz", t.detuning_GHz}};
}

json schedule_json(const Schedule& s) {
    json segs = json::array();
    for (const auto& seg : s.segments) {
        json tones = json::array();
        for (const auto& t : seg.tones) tones.push_back(tone_json(t));
        segs.push_back({{"duration_ns", seg.duration_ns}, {"tones", tones}});
    }
    return {{"name", s.name}, {"segments", segs}};
}

struct GateRun {
    Schedule schedule;
    Eigen::Matrix4cd ideal;
    double closed_fidelity = 0.0;
};

// Compile and calibrate the requested gate at the given J_zz. Gate names:
// pi2-1/pi2-2 (alias x1/x2), y1, y2, the *bar variants, cnot.
GateRun build_gate(const RunConfig& cfg, const std::string& gate, double jzz_MHz) {
    const DimerParams d = cfg.dimer_with_jzz_MHz(jzz_MHz);
    const EffectiveModel em = extract_effective_model(d);

    std::string name = gate;
    for (auto& c : name) c = char(std::tolower(static_cast<unsigned char>(c)));
    if (name == "pi2-1") name = "x1";
    if (name == "pi2-2") name = "x2";

    GateRun run;
    Schedule sched;
    sched.name = name;
    if (name == "cnot") {
        sched = cnot_schedule(em, 924.0, cfg.drive_amplitude_mT);
        run.ideal = ideal_gate("cnot");
    } else {
        run.ideal = ideal_gate(name);
        const int channel = name[1] - '0';
        double phase = name[0] == 'x' ? 0.0 : kPi / 2.0;
        if (name.size() > 2) phase += kPi;
        sched.segments = {pi2_segment(em, channel, phase, cfg.drive_amplitude_mT)};
    }
    auto scorer = [&](const Schedule& s) { return average_fidelity(s, em, run.ideal); };
    auto cal = calibrate_schedule(sched, em, scorer);
    run.schedule = cal.schedule;
    run.closed_fidelity = cal.fidelity_after;
    return run;
}

int cmd_levels(const RunConfig& cfg, const std::string& target, const std::string& axis_s) {
    const Axis axis = axis_from_string(axis_s);
    if (target == "monomer1" || target == "monomer2" || target == "monomer") {
        const MonomerParams p = target == "monomer2" ? cfg.dimer.m2 : cfg.dimer.m1;
        const auto ld = level_diagram(p, axis, -cfg.monomer_field_range_mT,
                                      cfg.monomer_field_range_mT, cfg.level_steps);
        auto out = open_output(cfg, "levels_" + target + "_" + axis_s + ".csv");
        write_levels_csv(out, ld);
    } else if (target == "dimer") {
        const auto ld = level_diagram(cfg.dimer, axis, -cfg.dimer_field_range_mT,
                                      cfg.dimer_field_range_mT, cfg.level_steps);
        auto out = open_output(cfg, "levels_dimer_" + axis_s + ".csv");
        write_levels_csv(out, ld);
    } else {
        throw std::invalid_argument("levels: target must be monomer[1|2] or dimer");
    }
    return 0;
}

int cmd_gate(const RunConfig& cfg, const std::string& gate, double jzz_MHz,
             double t2_us, const std::string& input_state) {
    const DimerParams d = cfg.dimer_with_jzz_MHz(jzz_MHz);
    const EffectiveModel em = extract_effective_model(d);
    const GateRun run = build_gate(cfg, gate, jzz_MHz);

    std::optional<DephasingRates> rates;
    if (std::isfinite(t2_us)) rates = DephasingRates::from_t2_us(t2_us);
    const FidelityReport report = average_gate_fidelity(run.schedule, em, run.ideal, rates);

    json j = {{"gate", run.schedule.name},
              {"jzz_MHz", jzz_MHz},
              {"t2_us", std::isfinite(t2_us) ? json(t2_us) : json("inf")},
              {"average_fidelity", report.average},
              {"min_fidelity", report.min},
              {"max_fidelity", report.max},
              {"per_state_fidelity", report.per_state},
              {"schedule", schedule_json(run.schedule)}};
    auto out = open_output(cfg, "gate_" + run.schedule.name + ".json");
    out << j.dump(2) << "\n";

    if (!input_state.empty()) {
        const Eigen::Vector4cd psi0 = parse_state_spec(input_state);
        Eigen::Matrix4cd rho;
        if (rates) {
            rho = run_schedule_lindblad(run.schedule, em, Eigen::Matrix4cd(psi0 * psi0.adjoint()), *rates);
        } else {
            const Eigen::Vector4cd psi = run_schedule_pure(run.schedule, em, psi0);
            rho = psi * psi.adjoint();
        }
        const Eigen::Vector4cd target = run.ideal * psi0;
        const double f = fidelity_mixed(target, rho);
        auto dm = open_output(cfg, "gate_" + run.schedule.name + "_state.csv");
        dm << "# input-state fidelity = " << format_number(f) << "\n";
        dm << "i,j,re,im\n";
        for (int i = 0; i < 4; ++i)
            for (int jcol = 0; jcol < 4; ++jcol)
                dm << i << "," << jcol << "," << format_number(rho(i, jcol).real()) << ","
                   << format_number(rho(i, jcol).imag()) << "\n";
        std::cout << "input-state fidelity: " << format_number(f) << "\n";
    }
    std::cout << "average fidelity: " << format_number(report.average) << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& variable, const std::string& gate) {
    struct Row {
        double value, avg, min, max;
    };
    std::vector<double> grid;
    if (variable == "jzz") grid = cfg.jzz_grid_MHz;
    else if (variable == "t2") grid = cfg.t2_grid_us;
    else throw std::invalid_argument("sweep: variable must be jzz or t2");
    if (grid.empty())
        throw std::invalid_argument("sweep: empty grid");

    std::vector<Row> rows(grid.size());
    auto run_point = [&](std::size_t i) {
        if (variable == "jzz") {
            const GateRun run = build_gate(cfg, gate, grid[i]);
            const EffectiveModel em = extract_effective_model(cfg.dimer_with_jzz_MHz(grid[i]));
            const FidelityReport r = average_gate_fidelity(run.schedule, em, run.ideal);
            rows[i] = {grid[i], r.average, r.min, r.max};
        } else {
            // Calibrate once at the configured J_zz, then sweep T2.
            static const GateRun run = build_gate(cfg, gate, cfg.dimer.j.j_zz * 1e3);
            const EffectiveModel em = extract_effective_model(cfg.dimer);
            const auto rates = std::isinf(grid[i]) ? DephasingRates{0.0, 0.0}
                                                   : DephasingRates::from_t2_us(grid[i]);
            const FidelityReport r = average_gate_fidelity(run.schedule, em, run.ideal, rates);
            rows[i] = {grid[i], r.average, r.min, r.max};
        }
    };

    const int workers = std::min<int>(worker_count(), int(grid.size()));
    if (variable == "t2") run_point(0); // force one-time calibration before forking
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> next{variable == "t2" ? std::size_t(1) : std::size_t(0)};
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                run_point(i);
        }));
    for (auto& f : futures) f.get();

    auto out = open_output(cfg, "sweep_" + variable + "_" + gate + ".csv");
    out << (variable == "jzz" ? "jzz_MHz" : "t2_us") << ",avg_fidelity,min_fidelity,max_fidelity\n";
    for (const Row& r : rows)
        out << format_number(r.value) << "," << format_number(r.avg) << ","
            << format_number(r.min) << "," << format_number(r.max) << "\n";
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "  (" << detail << ")\n";
        if (!ok) ++failures;
    };

    try {
        const DimerParams d = cfg.dimer;
        const EffectiveModel em = extract_effective_model(d);

        double worst_monomer = 0.0, worst_dimer = 0.0;
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
            worst_monomer = std::max({worst_monomer, clock_derivative_check(d.m1, ax),
                                      clock_derivative_check(d.m2, ax)});
            worst_dimer = std::max(worst_dimer, clock_derivative_check(d, ax));
        }
        check("monomer clock transitions |df/dB| < 1e-6 GHz/mT", worst_monomer < 1e-6,
              "max " + format_number(worst_monomer));
        check("dimer clock transitions |df/dB| < 1e-5 GHz/mT", worst_dimer < 1e-5,
              "max " + format_number(worst_dimer));
        const double zeeman = zeeman_control_derivative(d.m1.g, Axis::Z);
        check("Zeeman negative control ~ 0.028 GHz/mT",
              std::abs(zeeman - d.m1.g * kMuBOverH_GHz_per_mT) < 1e-4,
              format_number(zeeman));

        const auto ps = perturbative_states(d);
        const double e_mm = 2.0 * (-d.d_bar() - d.e_bar()) + ps.shift_dd_GHz;
        const double e_pp = 2.0 * (-d.d_bar() + d.e_bar()) + ps.shift_uu_GHz;
        const double de = d.delta_e(), jzz = d.j.j_zz;
        const double mid = std::sqrt(de * de + jzz * jzz);
        const double closed[4] = {e_mm, -2.0 * d.d_bar() - mid, -2.0 * d.d_bar() + mid, e_pp};
        double worst_energy = 0.0;
        for (int i = 0; i < 4; ++i)
            worst_energy = std::max(worst_energy, std::abs(em.energies(i) - closed[i]));
        check("manifold energies match closed forms within 0.5 MHz", worst_energy < 5e-4,
              "max " + format_number(worst_energy * 1e3) + " MHz");

        Schedule pulse{"x2", {pi2_segment(em, 2, 0.0, cfg.drive_amplitude_mT)}};
        const double leak = full_space_validation(d, pulse);
        check("9-dim lab-frame leakage of a pi/2 pulse < 1e-3", leak < 1e-3,
              format_number(leak));

        const double rel = std::abs(em.delta - em.delta_closed_form) /
                           std::abs(em.delta_closed_form);
        std::cout << "info  detuning delta: exact " << format_number(em.delta * 1e3)
                  << " MHz, closed form " << format_number(em.delta_closed_form * 1e3)
                  << " MHz (relative deviation " << format_number(rel) << ")\n";
    } catch (const TruncationError& e) {
        std::cout << "FAIL  truncation precondition (" << e.what() << ")\n";
        ++failures;
    }
    std::cout << (failures == 0 ? "all checks passed\n"
                                : std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

int cmd_calibrate(const RunConfig& cfg, const std::string& gate, double jzz_MHz) {
    const GateRun run = build_gate(cfg, gate, jzz_MHz);
    json j = {{"gate", run.schedule.name},
              {"jzz_MHz", jzz_MHz},
              {"average_fidelity", run.closed_fidelity},
              {"schedule", schedule_json(run.schedule)}};
    auto out = open_output(cfg, "calibrated_" + run.schedule.name + ".json");
    out << j.dump(2) << "\n";
    std::cout << "calibrated average fidelity: " << format_number(run.closed_fidelity) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"clockdimer: pulse-level simulator for an exchange-coupled "
                 "clock-transition nanomagnet dimer"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis = "z", gate = "cnot", target = "dimer";
    std::string variable = "t2", input_state;
    double jzz_MHz = 50.0;
    double t2_us = std::numeric_limits<double>::infinity();
    bool jzz_set = false;

    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--out", out_dir, "output directory");

    auto* levels = app.add_subcommand("levels", "energy levels vs field (CSV)")->fallthrough();
    levels->add_option("--target", target, "monomer1|monomer2|dimer");
    levels->add_option("--axis", axis, "x|y|z");

    auto* gate_cmd = app.add_subcommand("gate", "calibrate + score one gate")->fallthrough();
    gate_cmd->add_option("--gate", gate, "pi2-1|pi2-2|x1|y1|x2|y2|...bar|cnot");
    gate_cmd->add_option("--jzz", jzz_MHz, "J_zz in MHz")->each([&](const std::string&) { jzz_set = true; });
    gate_cmd->add_option("--t2", t2_us, "T2 in microseconds ('inf' for closed system)");
    gate_cmd->add_option("--input-state", input_state,
                         "extra single-state run, e.g. 'fig3' or 'i,0,0,1'");

    auto* sweep = app.add_subcommand("sweep", "fidelity sweep over jzz or t2 (CSV)")->fallthrough();
    sweep->add_option("--variable", variable, "jzz|t2");
    sweep->add_option("--gate", gate, "gate to sweep");
    sweep->add_option("--jzz", jzz_MHz, "J_zz in MHz (fixed point for the t2 sweep)")
        ->each([&](const std::string&) { jzz_set = true; });

    auto* validate = app.add_subcommand("validate", "physics self-checks")->fallthrough();

    auto* calibrate = app.add_subcommand("calibrate", "calibrate a gate, dump schedule JSON")->fallthrough();
    calibrate->add_option("--gate", gate, "gate name");
    calibrate->add_option("--jzz", jzz_MHz, "J_zz in MHz")->each([&](const std::string&) { jzz_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!jzz_set) jzz_MHz = cfg.dimer.j.j_zz * 1e3;

        if (levels->parsed()) return cmd_levels(cfg, target, axis);
        if (gate_cmd->parsed()) return cmd_gate(cfg, gate, jzz_MHz, t2_us, input_state);
        if (sweep->parsed()) return cmd_sweep(cfg, variable, gate);
        if (validate->parsed()) return cmd_validate(cfg);
        if (calibrate->parsed()) return cmd_calibrate(cfg, gate, jzz_MHz);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
