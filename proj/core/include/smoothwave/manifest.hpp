#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace smoothwave {

// Reproducibility sidecar written next to every CLI artifact. The primary
// CSV/JSON outputs carry no timestamps; wall time lives only here.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    uint64_t seed = 0;
    std::vector<std::string> artifacts;
    double wall_time_s = 0.0;
    std::string tool_version;
};

std::string manifest_to_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace smoothwave
