#pragma once

#include <stdexcept>
#include <string>

namespace knotforge {

enum class ErrorKind {
    degenerate,     // tangential crossing, triple point, ambiguous over/under
    infeasible,     // search budget exhausted
    invalid_input,  // malformed files, bad options, violated preconditions
    domain,         // mathematical precondition failed (unbounded, non-compact)
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace knotforge
