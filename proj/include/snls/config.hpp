// config.hpp — run configuration: INI-style file with sections, validated
// into a SimConfig.  Constraint violations are reported by name.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snls/coefficients.hpp"
#include "snls/norms.hpp"

namespace snls {

enum class Integrator { splitting, ito_em };

struct SimConfig {
    // grid
    int n = 32;
    double side = kTwoPi;
    // time
    double T = 1.0;
    double dt = 1e-3;
    // exponents; shat = s − 1/p
    double p = 4.0;
    double q = 4.0;
    double s = 1.0;
    bool strichartz_enabled = true;  // enforces 2/p + 2/q = 1
    // coefficients
    CoefficientSpec coeffs;
    // noise
    int J = 8;
    double rho = 4.0;
    double s0 = 1.5;
    std::uint64_t seed = 42;
    // integrator
    Integrator scheme = Integrator::splitting;
    bool strang = false;
    bool exponential = true;
    bool with_correction = true;
    // picard
    double n_cut = 1000.0;
    int picard_max_iter = 40;
    double picard_tol = 1e-8;
    // monitors
    std::vector<double> thresholds = {};
    bool stop_on_hit = false;
    EnormSpec::Kind enorm_kind = EnormSpec::Kind::bessel_proxy;
    bool record_energy_bound = false;  // energy Itô-bound integrands per step

    double shat() const { return s - 1.0 / p; }
    EnormSpec enorm() const { return EnormSpec{enorm_kind, shat(), q}; }
    int steps() const { return int(T / dt + 0.5); }

    void validate() const;  // throws with the violated constraint named
};

// Raw parsed file: section → key → (value, line number).
struct IniFile {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;

    const Entry* find(const std::string& section, const std::string& key) const;
};

IniFile parse_ini(const std::string& path);
SimConfig parse_config(const std::string& path);
SimConfig config_from_ini(const IniFile& ini, const std::string& path);

// Flat key=value snapshot used in manifests; deterministic order.
std::vector<std::pair<std::string, std::string>> config_snapshot(const SimConfig& c);

}  // namespace snls
