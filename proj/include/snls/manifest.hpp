// manifest.hpp — run manifests and artifact emission (JSON / JSON-lines /
// CSV).  Artifacts are byte-stable: fixed key order, 17-significant-digit
// floats, no timestamps in data files.
#pragma once

#include <string>
#include <vector>

#include "snls/config.hpp"
#include "snls/evolution.hpp"

#include "json.hpp"

namespace snls {

inline constexpr const char* kVersion = "snls 0.1.0";

struct RunManifest {
    std::string command;
    SimConfig config;
    std::uint64_t seed = 0;
    int paths = 1;
    int threads = 1;
    std::vector<std::string> artifacts;
    double wallclock_seconds = 0.0;  // metadata only, excluded from artifact diffs
};

nlohmann::json manifest_json(const RunManifest& m);
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const nlohmann::json& j);

// CSV with a header row; every double rendered by format17.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Trajectory export: one JSON object per step (t, mass, energy, H¹ norm,
// E-norm, hit flags), as JSON-lines.
std::string trajectory_jsonl(const RunResult& run);

// Raw state dump: u64 n, then n² (re, im) f64 pairs, little-endian.
void write_state(const GridFunction& u, const std::string& path);

}  // namespace snls
