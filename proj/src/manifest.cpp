// manifest.cpp
#include "snls/manifest.hpp"

#include <cstdio>
#include <fstream>

namespace snls {

nlohmann::json manifest_json(const RunManifest& m) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["command"] = m.command;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config_snapshot(m.config)) cfg[k] = v;
    j["config"] = cfg;
    j["seed"] = m.seed;
    j["paths"] = m.paths;
    j["threads"] = m.threads;
    j["artifacts"] = m.artifacts;
    j["wallclock_seconds"] = m.wallclock_seconds;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), "cannot open " + path + " for writing");
    out << text;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += header[i] + (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += format17(row[i]) + (i + 1 < row.size() ? "," : "\n");
    }
    write_text(path, out);
}

std::string trajectory_jsonl(const RunResult& run) {
    std::string out;
    for (const StepDiag& d : run.diag) {
        nlohmann::json j;
        j["t"] = format17(d.t);
        j["mass"] = format17(d.mass);
        j["kinetic"] = format17(d.kinetic);
        j["potential"] = format17(d.potential);
        j["psi"] = format17(d.psi);
        j["h1"] = format17(d.h1);
        j["e_norm"] = format17(d.e_norm);
        j["y_running"] = format17(d.y_running);
        if (d.qv_grad != 0.0 || d.qv_trace != 0.0 || d.qv_potential != 0.0) {
            j["qv_grad"] = format17(d.qv_grad);
            j["qv_trace"] = format17(d.qv_trace);
            j["qv_potential"] = format17(d.qv_potential);
        }
        nlohmann::json hits = nlohmann::json::array();
        for (const HittingRecord& h : run.hits) {
            if (h.hit && h.time <= d.t) {
                nlohmann::json hj;
                hj["threshold"] = format17(h.threshold);
                hj["norm"] = h.norm;
                hj["time"] = format17(h.time);
                hits.push_back(hj);
            }
        }
        j["hits"] = hits;
        out += j.dump() + "\n";
    }
    return out;
}

void write_state(const GridFunction& u, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    require(f != nullptr, "write_state: cannot open " + path);
    std::uint64_t n = std::uint64_t(u.grid().n);
    std::fwrite(&n, 8, 1, f);
    std::fwrite(u.values().data(), sizeof(cplx), u.values().size(), f);
    std::fclose(f);
}

}  // namespace snls
