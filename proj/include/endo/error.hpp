#pragma once

#include <stdexcept>
#include <string>

namespace endo {

enum class ErrorKind {
    InvalidInput,
    InvalidCurve,
    NumericFailure,
    Unsupported,
    Resource,
    InternalConsistency,
    DegenerateCover,
    InvalidModule,
    InvalidDatum,
    InvalidWeight,
    InvalidModel,
    CoverModel,
    CorruptCache,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InvalidCurve: return "invalid-curve";
        case ErrorKind::NumericFailure: return "numeric-failure";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Resource: return "resource";
        case ErrorKind::InternalConsistency: return "internal-consistency";
        case ErrorKind::DegenerateCover: return "degenerate-cover";
        case ErrorKind::InvalidModule: return "invalid-module";
        case ErrorKind::InvalidDatum: return "invalid-datum";
        case ErrorKind::InvalidWeight: return "invalid-weight";
        case ErrorKind::InvalidModel: return "invalid-model";
        case ErrorKind::CoverModel: return "cover-model";
        case ErrorKind::CorruptCache: return "corrupt-cache";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, ErrorKind k, const std::string& msg) {
    if (!cond) fail(k, msg);
}

}  // namespace endo
