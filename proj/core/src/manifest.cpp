#include "smoothwave/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "smoothwave/errors.hpp"

namespace smoothwave {

std::string manifest_to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["seed"] = m.seed;
    j["artifacts"] = m.artifacts;
    j["wall_time_s"] = m.wall_time_s;
    j["tool_version"] = m.tool_version;
    return j.dump(2) + "\n";
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw_invalid("manifest: cannot write " + path);
    f << manifest_to_json(m);
}

}  // namespace smoothwave
