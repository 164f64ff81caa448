#include "smoothwave/registry.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "smoothwave/errors.hpp"

namespace smoothwave {

namespace {

// Constants calibrated on the grids recorded below (seed 0); bands stated
// outright by the acceptance criteria are pinned as-is.
struct DefaultEntry {
    const char* id;
    double constant;
    const char* grid;
};

constexpr const char* kCalibrationDate = "2026-08-08";

const DefaultEntry kDefaults[] = {
    {"local-ratio", 1.5, "x in {1e4,1e5}, y in {x^1/3, x^1/2, 1e3}, d in {1..x/10}; observed 1.06"},
    {"segment-bound", 0.5, "X in {1e4,1e5}, y in {20..316}, q in {1..10}, Z in [qy, X]; observed 0.088"},
    {"alpha-approx", 1.0, "x in {1e3..1e6}, y in {50..1e4}, y > log x; |diff|*log y; observed 0.53"},
    {"ht-ratio", 1.5, "x in {1e4,1e5,1e6}, y in {1e2,1e3,1e4}; band on ht/Psi; observed 1.40"},
    {"dickman-hildebrand", 0.15, "x in {1e5,1e6}, y in {1e3,1e4}; |x rho(u)/Psi - 1|"},
    {"minor-arc-bound", 0.02, "x in {1e5,1e6}, y in {10..30}, size_ok grid; |S|/rhs; observed 0.0060"},
    {"major-arc-model", 2.5, "x in {1e5,1e6}, y in {300,1000}, q <= y^(1/4), |dx| <= 20; observed 1.78"},
    {"moment-normalization-p2.5", 4.0, "x in {1e4,1e5}, y in {x^1/3,x^1/2}, 50 weight draws; observed 3.09"},
    {"moment-normalization-p3", 2.0, "same grid as p2.5; observed 1.53"},
    {"moment-normalization-p4", 1.2, "same grid as p2.5; observed 0.80"},
    {"minor-arc-sup", 0.05, "x in {1e5,1e6}, capped R; max |S|/Psi off the arcs; observed 0.027"},
    {"large-values", 1.0, "x in {1e4,1e5}, y=50, delta in {0.3,0.5,0.9}; R/bound ~ 1e-15"},
    {"bourgain-pair", 2.0, "R in {10..1e3}, Q=50, Delta=0.01, x=1e4; pair_sum/rhs; observed 1.19"},
    {"abc-main-term-band", 2.0, "x=1e5, y=316; band on exact/(Psi^3/2x)"},
    {"circle-major-frac", 0.8, "x=1e5, y=1e3-scale, capped R; observed 0.998"},
    {"roth-transference-lower", 0.01, "x in {1e4,1e5}, y=100, B = full smooth set; observed 0.13"},
    {"mz-ratio", 1.3, "random B in [1,100], N in (maxB, 4*maxB), p=2.1; observed 1.013"},
};

}  // namespace

const std::vector<std::string>& calibration_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& d : kDefaults) v.push_back(d.id);
        return v;
    }();
    return ids;
}

CalibrationRegistry CalibrationRegistry::builtin_defaults() {
    CalibrationRegistry reg;
    for (const auto& d : kDefaults)
        reg.entries_[d.id].push_back({d.constant, d.grid, kCalibrationDate});
    return reg;
}

CalibrationRegistry CalibrationRegistry::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_invalid("registry: cannot open " + path);
    nlohmann::json j;
    f >> j;
    CalibrationRegistry reg;
    for (const auto& [id, arr] : j.at("entries").items()) {
        for (const auto& e : arr) {
            reg.entries_[id].push_back({e.at("constant").get<double>(),
                                        e.value("grid", std::string{}),
                                        e.value("date", std::string{})});
        }
    }
    return reg;
}

CalibrationRegistry CalibrationRegistry::load_or_bootstrap(const std::string& path) {
    if (std::filesystem::exists(path)) return load(path);
    CalibrationRegistry reg = builtin_defaults();
    reg.save(path);
    return reg;
}

std::string CalibrationRegistry::default_path() {
    if (const char* env = std::getenv("SMOOTHWAVE_CALIB")) return env;
    return "calibration/registry.json";
}

double CalibrationRegistry::constant(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end() || it->second.empty())
        throw_invalid("registry: no calibration entry for '" + id + "'");
    return it->second.back().constant;
}

void CalibrationRegistry::append(const std::string& id, CalibrationEntry entry) {
    entries_[id].push_back(std::move(entry));
}

std::string CalibrationRegistry::to_json() const {
    nlohmann::ordered_json j;
    j["entries"] = nlohmann::ordered_json::object();
    for (const auto& [id, list] : entries_) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& e : list)
            arr.push_back({{"constant", e.constant}, {"grid", e.grid}, {"date", e.date}});
        j["entries"][id] = arr;
    }
    return j.dump(2) + "\n";
}

void CalibrationRegistry::save(const std::string& path) const {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw_invalid("registry: cannot write " + path);
    f << to_json();
}

}  // namespace smoothwave
