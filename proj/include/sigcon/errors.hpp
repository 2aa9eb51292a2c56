#pragma once

#include <stdexcept>
#include <string>

namespace sigcon {

enum class Errc {
    Parse,
    DuplicateEdge,
    LeaderHasIncoming,
    InvalidNode,
    InvalidSpec,
    NotAcyclic,
    BudgetExceedsRoots,
    NoLeaders,
    NotConverged,
    NoConvergence,
    Oscillatory,
    Invariant,
};

const char* errc_name(Errc code);

/// Every failure raised by the library. `code()` identifies the condition,
/// `is_numerical()` separates solver/iteration failures from bad input.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message);

    Errc code() const noexcept { return code_; }
    bool is_numerical() const noexcept;

private:
    Errc code_;
};

/// Parse failure with the 1-based line number of the offending input line
/// (0 when the input is not line-oriented).
class ParseError : public Error {
public:
    ParseError(int line, const std::string& message);

    int line() const noexcept { return line_; }

private:
    int line_;
};

[[noreturn]] void invariant_failure(const std::string& what);

}  // namespace sigcon
