#include "smoothwave/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "smoothwave/errors.hpp"

namespace smoothwave {

VerificationRecord make_record(std::map<std::string, double> params, double lhs, double rhs,
                               bool hypothesis_ok) {
    VerificationRecord r;
    r.params = std::move(params);
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::quiet_NaN();
    r.hypothesis_ok = hypothesis_ok;
    return r;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string records_to_csv(const std::vector<VerificationRecord>& recs) {
    // Header is the sorted union of parameter names; rows leave absent
    // parameters empty.
    std::map<std::string, bool> keys;
    for (const auto& r : recs)
        for (const auto& [k, v] : r.params) keys[k] = true;

    std::string out;
    for (const auto& [k, used] : keys) {
        out += k;
        out += ',';
    }
    out += "lhs,rhs,ratio,hypothesis_ok\n";
    for (const auto& r : recs) {
        for (const auto& [k, used] : keys) {
            auto it = r.params.find(k);
            if (it != r.params.end()) out += format_double(it->second);
            out += ',';
        }
        out += format_double(r.lhs);
        out += ',';
        out += format_double(r.rhs);
        out += ',';
        out += format_double(r.ratio);
        out += ',';
        out += r.hypothesis_ok ? '1' : '0';
        out += '\n';
    }
    return out;
}

void write_records_csv(const std::string& path, const std::vector<VerificationRecord>& recs) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw_invalid("cannot open for writing: " + path);
    f << records_to_csv(recs);
}

}  // namespace smoothwave
