#pragma once

#include <stdexcept>
#include <string>

namespace patlist {

enum class ErrorCode {
    SelfLoop,
    ParallelEdge,
    EmptyInput,
    EdgeNotLive,
    NotDeleted,
    VertexNotLive,
    KOutOfRange,
    Disconnected,
    SameVertex,
    NotBackEdge,
    TooLarge,
    JournalMismatch,
    NotUnary,
    Infeasible,
    UnknownVertex,
    Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace patlist
