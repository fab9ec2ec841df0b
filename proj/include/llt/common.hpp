#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace llt {

using Element = std::uint32_t;
inline constexpr Element kNone = std::numeric_limits<Element>::max();

enum class ErrorCode {
    InvalidElement,
    Duplicate,
    NotFound,
    RootDeletion,
    InvalidQuery,
    OrderViolation,
    NonAdjacentMerge,
    EndpointMismatch,
    StructuralCorruption,
    TooLarge,
    Parse,
    Io,
    Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// ceil(log2(x)) for x >= 1; 0 for x <= 1.
inline int ceil_log2(std::uint64_t x) {
    int r = 0;
    std::uint64_t p = 1;
    while (p < x) {
        p <<= 1;
        ++r;
    }
    return r;
}

}  // namespace llt
