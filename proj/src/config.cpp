// config.cpp
#include "snls/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace snls {

namespace {
std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail_at(const std::string& path, int line, const std::string& msg) {
    std::ostringstream os;
    os << path << ":" << line << ": " << msg;
    throw std::invalid_argument(os.str());
}
}  // namespace

const IniFile::Entry* IniFile::find(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    if (s == sections.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
}

IniFile parse_ini(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "config: cannot open " + path);
    IniFile ini;
    std::string section = "";
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail_at(path, lineno, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail_at(path, lineno, "expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) fail_at(path, lineno, "empty key");
        ini.sections[section][key] = IniFile::Entry{val, lineno};
    }
    return ini;
}

namespace {

double to_double(const std::string& path, const IniFile::Entry& e) {
    try {
        std::size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail_at(path, e.line, "expected a number, got '" + e.value + "'");
    }
}

long long to_int(const std::string& path, const IniFile::Entry& e) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        fail_at(path, e.line, "expected an integer, got '" + e.value + "'");
    }
}

bool to_bool(const std::string& path, const IniFile::Entry& e) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    fail_at(path, e.line, "expected true/false, got '" + e.value + "'");
}

std::vector<double> to_list(const std::string& path, const IniFile::Entry& e) {
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            fail_at(path, e.line, "expected a comma-separated number list");
        }
    }
    return out;
}

}  // namespace

void SimConfig::validate() const {
    require(n >= 4 && (n & (n - 1)) == 0, "grid constraint violated: n must be a power of two, n >= 4");
    require(side > 0.0, "grid constraint violated: side must be positive");
    require(dt > 0.0 && T > 0.0, "time constraint violated: T and dt must be positive");
    require(T / dt >= 1.0, "time constraint violated: need at least one step");
    require(p > 2.0, "exponent constraint violated: p must lie in (2, inf)");
    require(q > 2.0, "exponent constraint violated: q must lie in (2, inf)");
    if (strichartz_enabled) {
        double scaling = 2.0 / p + 2.0 / q;
        require(std::abs(scaling - 1.0) < 1e-12,
                "scaling condition 2/p+2/q=1 violated (got 2/p+2/q=" + format17(scaling) + ")");
    }
    require(s > 1.0 - 1.0 / p && s <= 1.0,
            "regularity constraint violated: s must lie in (1-1/p, 1]");
    coeffs.validate();
    require(J >= 1, "noise constraint violated: J >= 1");
    require(s0 > 1.0, "noise constraint violated: s0 > 1");
    require(n_cut >= 1.0, "picard constraint violated: n_cut >= 1");
    require(picard_max_iter >= 1 && picard_tol > 0.0,
            "picard constraint violated: iteration cap and tolerance must be positive");
}

SimConfig config_from_ini(const IniFile& ini, const std::string& path) {
    SimConfig c;
    auto num = [&](const char* sec, const char* key, double& dst) {
        if (const auto* e = ini.find(sec, key)) dst = to_double(path, *e);
    };
    auto inum = [&](const char* sec, const char* key, int& dst) {
        if (const auto* e = ini.find(sec, key)) dst = int(to_int(path, *e));
    };
    auto bval = [&](const char* sec, const char* key, bool& dst) {
        if (const auto* e = ini.find(sec, key)) dst = to_bool(path, *e);
    };

    inum("grid", "n", c.n);
    num("grid", "side", c.side);
    num("time", "T", c.T);
    num("time", "dt", c.dt);
    num("exponents", "p", c.p);
    num("exponents", "q", c.q);
    num("exponents", "s", c.s);
    bval("exponents", "strichartz", c.strichartz_enabled);

    if (const auto* e = ini.find("coefficients", "f_case")) {
        if (e->value == "none") c.coeffs.f_case = FCase::none;
        else if (e->value == "defocusing_poly") c.coeffs.f_case = FCase::defocusing_poly;
        else if (e->value == "defocusing_power") c.coeffs.f_case = FCase::defocusing_power;
        else if (e->value == "focusing_power") c.coeffs.f_case = FCase::focusing_power;
        else fail_at(path, e->line, "unknown f_case '" + e->value + "'");
    }
    if (const auto* e = ini.find("coefficients", "f_coeffs")) c.coeffs.poly = to_list(path, *e);
    num("coefficients", "f_C", c.coeffs.f_C);
    num("coefficients", "f_sigma", c.coeffs.f_sigma);
    if (const auto* e = ini.find("coefficients", "g_case")) {
        if (e->value == "none") c.coeffs.g_case = GCase::none;
        else if (e->value == "constant") c.coeffs.g_case = GCase::constant;
        else if (e->value == "log_saturating") c.coeffs.g_case = GCase::log_saturating;
        else fail_at(path, e->line, "unknown g_case '" + e->value + "'");
    }
    num("coefficients", "g_value", c.coeffs.g_value);
    num("coefficients", "g_C", c.coeffs.g_C);
    num("coefficients", "beta", c.coeffs.beta);
    num("coefficients", "a", c.coeffs.a);
    num("coefficients", "gamma", c.coeffs.gamma);

    inum("noise", "J", c.J);
    num("noise", "rho", c.rho);
    num("noise", "s0", c.s0);
    if (const auto* e = ini.find("noise", "seed"))
        c.seed = std::uint64_t(to_int(path, *e));

    if (const auto* e = ini.find("integrator", "scheme")) {
        if (e->value == "splitting") c.scheme = Integrator::splitting;
        else if (e->value == "ito_em") c.scheme = Integrator::ito_em;
        else fail_at(path, e->line, "unknown scheme '" + e->value + "'");
    }
    bval("integrator", "strang", c.strang);
    bval("integrator", "exponential", c.exponential);
    bval("integrator", "with_correction", c.with_correction);

    num("picard", "n_cut", c.n_cut);
    inum("picard", "max_iter", c.picard_max_iter);
    num("picard", "tol", c.picard_tol);

    if (const auto* e = ini.find("monitors", "thresholds")) c.thresholds = to_list(path, *e);
    bval("monitors", "stop_on_hit", c.stop_on_hit);
    if (const auto* e = ini.find("monitors", "enorm")) {
        if (e->value == "proxy" || e->value == "bessel_proxy")
            c.enorm_kind = EnormSpec::Kind::bessel_proxy;
        else if (e->value == "slobodetskii") c.enorm_kind = EnormSpec::Kind::slobodetskii;
        else fail_at(path, e->line, "unknown enorm '" + e->value + "'");
    }
    bval("monitors", "energy_bound", c.record_energy_bound);

    c.validate();
    return c;
}

SimConfig parse_config(const std::string& path) {
    return config_from_ini(parse_ini(path), path);
}

std::vector<std::pair<std::string, std::string>> config_snapshot(const SimConfig& c) {
    std::vector<std::pair<std::string, std::string>> kv;
    auto add = [&](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
    add("grid.n", std::to_string(c.n));
    add("grid.side", format17(c.side));
    add("time.T", format17(c.T));
    add("time.dt", format17(c.dt));
    add("exponents.p", format17(c.p));
    add("exponents.q", format17(c.q));
    add("exponents.s", format17(c.s));
    add("exponents.shat", format17(c.shat()));
    switch (c.coeffs.f_case) {
        case FCase::none: add("coefficients.f_case", "none"); break;
        case FCase::defocusing_poly: {
            add("coefficients.f_case", "defocusing_poly");
            std::string coeffs;
            for (double a : c.coeffs.poly) coeffs += (coeffs.empty() ? "" : ",") + format17(a);
            add("coefficients.f_coeffs", coeffs);
            break;
        }
        case FCase::defocusing_power:
            add("coefficients.f_case", "defocusing_power");
            add("coefficients.f_C", format17(c.coeffs.f_C));
            add("coefficients.f_sigma", format17(c.coeffs.f_sigma));
            break;
        case FCase::focusing_power:
            add("coefficients.f_case", "focusing_power");
            add("coefficients.f_C", format17(c.coeffs.f_C));
            add("coefficients.f_sigma", format17(c.coeffs.f_sigma));
            break;
    }
    switch (c.coeffs.g_case) {
        case GCase::none: add("coefficients.g_case", "none"); break;
        case GCase::constant:
            add("coefficients.g_case", "constant");
            add("coefficients.g_value", format17(c.coeffs.g_value));
            break;
        case GCase::log_saturating:
            add("coefficients.g_case", "log_saturating");
            add("coefficients.g_C", format17(c.coeffs.g_C));
            break;
    }
    add("noise.J", std::to_string(c.J));
    add("noise.rho", format17(c.rho));
    add("noise.s0", format17(c.s0));
    add("noise.seed", std::to_string(c.seed));
    add("integrator.scheme", c.scheme == Integrator::splitting ? "splitting" : "ito_em");
    add("integrator.strang", c.strang ? "true" : "false");
    add("integrator.exponential", c.exponential ? "true" : "false");
    add("integrator.with_correction", c.with_correction ? "true" : "false");
    add("picard.n_cut", format17(c.n_cut));
    add("picard.max_iter", std::to_string(c.picard_max_iter));
    add("picard.tol", format17(c.picard_tol));
    std::string th;
    for (double t : c.thresholds) th += (th.empty() ? "" : ",") + format17(t);
    add("monitors.thresholds", th);
    add("monitors.stop_on_hit", c.stop_on_hit ? "true" : "false");
    add("monitors.enorm",
        c.enorm_kind == EnormSpec::Kind::bessel_proxy ? "bessel_proxy" : "slobodetskii");
    add("monitors.energy_bound", c.record_energy_bound ? "true" : "false");
    return kv;
}

}  // namespace snls
