#include "clockdimer/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace clockdimer {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<double> parse_list(const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        if (item == "inf")
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(std::stod(item));
    }
    return out;
}

} // namespace

DimerParams RunConfig::dimer_with_jzz_MHz(double jzz_MHz) const {
    DimerParams d = dimer;
    d.j.j_zz = jzz_MHz * 1e-3;
    return d;
}

std::string RunConfig::canonical_text() const {
    std::ostringstream os;
    os << "[dimer]\n";
    os << "D1 = " << format_number(dimer.m1.D) << "\n";
    os << "E1 = " << format_number(dimer.m1.E) << "\n";
    os << "D2 = " << format_number(dimer.m2.D) << "\n";
    os << "E2 = " << format_number(dimer.m2.E) << "\n";
    os << "g = " << format_number(dimer.m1.g) << "\n";
    os << "J_perp_GHz = " << format_number(dimer.j.j_perp) << "\n";
    os << "J_zz_GHz = " << format_number(dimer.j.j_zz) << "\n";
    os << "[drive]\n";
    os << "amplitude_mT = " << format_number(drive_amplitude_mT) << "\n";
    os << "[sweep]\n";
    os << "jzz_MHz =";
    for (double v : jzz_grid_MHz) os << " " << format_number(v);
    os << "\nt2_us =";
    for (double v : t2_grid_us) os << " " << format_number(v);
    os << "\n[levels]\n";
    os << "monomer_range_mT = " << format_number(monomer_field_range_mT) << "\n";
    os << "dimer_range_mT = " << format_number(dimer_field_range_mT) << "\n";
    os << "steps = " << level_steps << "\n";
    os << "[output]\n";
    os << "seed = " << seed << "\n";
    return os.str();
}

std::uint64_t RunConfig::hash() const {
    const std::string text = canonical_text();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "dimer.D1") cfg.dimer.m1.D = std::stod(value);
        else if (key == "dimer.E1") cfg.dimer.m1.E = std::stod(value);
        else if (key == "dimer.D2") cfg.dimer.m2.D = std::stod(value);
        else if (key == "dimer.E2") cfg.dimer.m2.E = std::stod(value);
        else if (key == "dimer.g") { cfg.dimer.m1.g = std::stod(value); cfg.dimer.m2.g = cfg.dimer.m1.g; }
        else if (key == "dimer.J_perp_GHz") cfg.dimer.j.j_perp = std::stod(value);
        else if (key == "dimer.J_zz_GHz") cfg.dimer.j.j_zz = std::stod(value);
        else if (key == "drive.amplitude_mT") cfg.drive_amplitude_mT = std::stod(value);
        else if (key == "sweep.jzz_MHz") cfg.jzz_grid_MHz = parse_list(value);
        else if (key == "sweep.t2_us") cfg.t2_grid_us = parse_list(value);
        else if (key == "levels.monomer_range_mT") cfg.monomer_field_range_mT = std::stod(value);
        else if (key == "levels.dimer_range_mT") cfg.dimer_field_range_mT = std::stod(value);
        else if (key == "levels.steps") cfg.level_steps = std::stoi(value);
        else if (key == "output.directory") cfg.out_dir = value;
        else if (key == "output.seed") cfg.seed = std::stoull(value);
        else
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Eigen::Vector4cd parse_state_spec(const std::string& spec) {
    using namespace std::complex_literals;
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    const std::string s = trim(spec);
    if (s == "fig3" || s == "bell-uu-dd") {
        v(3) = 1.0;
        v(0) = 1i;
    } else {
        std::stringstream ss(s);
        std::string item;
        int idx = 0;
        while (std::getline(ss, item, ',')) {
            if (idx >= 4)
                throw std::invalid_argument("state spec: more than four amplitudes");
            item = trim(item);
            // token grammar: [real][+/-imag]i, e.g. "1", "-0.5i", "0.3+0.4i"
            double re = 0.0, im = 0.0;
            if (!item.empty() && item.back() == 'i') {
                std::string body = item.substr(0, item.size() - 1);
                std::size_t split = body.find_last_of("+-");
                if (split == std::string::npos || split == 0) {
                    im = body.empty() || body == "+" || body == "-"
                             ? (body == "-" ? -1.0 : 1.0)
                             : std::stod(body);
                } else {
                    re = std::stod(body.substr(0, split));
                    std::string imag = body.substr(split);
                    im = imag == "+" ? 1.0 : imag == "-" ? -1.0 : std::stod(imag);
                }
            } else if (!item.empty()) {
                re = std::stod(item);
            }
            v(idx++) = std::complex<double>(re, im);
        }
    }
    const double n = v.norm();
    if (n < 1e-12)
        throw std::invalid_argument("state spec: zero vector");
    return v / n;
}

std::string output_header(const RunConfig& cfg) {
    std::ostringstream os;
    os << "# clockdimer v" << kArtifactVersion << "\n";
    os << "# config-hash=" << std::hex << cfg.hash() << std::dec << "\n";
    return os.str();
}

} // namespace clockdimer
