#pragma once

#include <stdexcept>
#include <string>

namespace smoothwave {

// Error taxonomy shared by the library and the CLI exit-code mapping.
enum class ErrorKind {
    InvalidParameter,
    OutOfRange,
    ResourceLimit,
    NumericFailure,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::OutOfRange: return "out-of-range";
        case ErrorKind::ResourceLimit: return "resource-limit";
        case ErrorKind::NumericFailure: return "numeric-failure";
    }
    return "unknown";
}

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorKind::InvalidParameter, msg);
}
[[noreturn]] inline void throw_out_of_range(const std::string& msg) {
    throw Error(ErrorKind::OutOfRange, msg);
}
[[noreturn]] inline void throw_resource_limit(const std::string& msg) {
    throw Error(ErrorKind::ResourceLimit, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorKind::NumericFailure, msg);
}

}  // namespace smoothwave
