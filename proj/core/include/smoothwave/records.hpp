#pragma once

#include <map>
#include <string>
#include <vector>

namespace smoothwave {

// One (LHS, RHS, ratio) row of an inequality check; the unit of the
// calibration registry's provenance trail.
struct VerificationRecord {
    std::map<std::string, double> params;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs when rhs > 0, else NaN
    bool hypothesis_ok = false;
};

VerificationRecord make_record(std::map<std::string, double> params, double lhs, double rhs,
                               bool hypothesis_ok);

// Shared float formatting: 17 significant digits, reproducible diffs.
std::string format_double(double v);

// CSV with a header naming every parameter. Fixed column order: the sorted
// parameter names, then lhs, rhs, ratio, hypothesis_ok. All rows must carry
// the same parameter keys.
std::string records_to_csv(const std::vector<VerificationRecord>& recs);
void write_records_csv(const std::string& path, const std::vector<VerificationRecord>& recs);

}  // namespace smoothwave
