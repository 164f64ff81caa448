#pragma once

#include <map>
#include <string>
#include <vector>

namespace smoothwave {

// The registry turns every "<<" statement into an assertable inequality:
// each id carries the observed constant and the grid it was calibrated on.
// Entries are append-only per inequality; the active constant is the latest.
struct CalibrationEntry {
    double constant = 0.0;
    std::string grid;
    std::string date;
};

class CalibrationRegistry {
public:
    static CalibrationRegistry builtin_defaults();
    static CalibrationRegistry load(const std::string& path);
    // Reads the file when present, otherwise writes the built-in defaults
    // there and returns them.
    static CalibrationRegistry load_or_bootstrap(const std::string& path);
    // $SMOOTHWAVE_CALIB when set, else "calibration/registry.json".
    static std::string default_path();

    bool has(const std::string& id) const { return entries_.count(id) > 0; }
    double constant(const std::string& id) const;
    void append(const std::string& id, CalibrationEntry entry);
    void save(const std::string& path) const;
    std::string to_json() const;

    const std::map<std::string, std::vector<CalibrationEntry>>& entries() const {
        return entries_;
    }

private:
    std::map<std::string, std::vector<CalibrationEntry>> entries_;
};

// Every calibrated inequality id known to the verify runner; each must have
// a registry entry (enforced before any suite runs).
const std::vector<std::string>& calibration_ids();

}  // namespace smoothwave
