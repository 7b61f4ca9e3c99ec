#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biliaison {

/// Machine-readable failure categories. The CLI prints these verbatim.
enum class ErrorCode {
    invalid_sequence,
    invalid_profile,
    invalid_descriptor,
    negative_rank,
    ancestor_mismatch,
    level_mismatch,
    join_refused,
    integrity,
    precondition,
    parse,
    usage,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_sequence: return "invalid_sequence";
        case ErrorCode::invalid_profile: return "invalid_profile";
        case ErrorCode::invalid_descriptor: return "invalid_descriptor";
        case ErrorCode::negative_rank: return "negative_rank";
        case ErrorCode::ancestor_mismatch: return "ancestor_mismatch";
        case ErrorCode::level_mismatch: return "level_mismatch";
        case ErrorCode::join_refused: return "join_refused";
        case ErrorCode::integrity: return "integrity";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::parse: return "parse";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace biliaison
