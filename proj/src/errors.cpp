#include "sigcon/errors.hpp"

namespace sigcon {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::Parse: return "ParseError";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::LeaderHasIncoming: return "LeaderHasIncoming";
        case Errc::InvalidNode: return "InvalidNode";
        case Errc::InvalidSpec: return "InvalidSpec";
        case Errc::NotAcyclic: return "NotAcyclic";
        case Errc::BudgetExceedsRoots: return "BudgetExceedsRoots";
        case Errc::NoLeaders: return "NoLeaders";
        case Errc::NotConverged: return "NotConverged";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::Oscillatory: return "Oscillatory";
        case Errc::Invariant: return "InvariantFailure";
    }
    return "Error";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

bool Error::is_numerical() const noexcept {
    return code_ == Errc::NotConverged || code_ == Errc::NoConvergence || code_ == Errc::Oscillatory;
}

ParseError::ParseError(int line, const std::string& message)
    : Error(Errc::Parse, line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

void invariant_failure(const std::string& what) { throw Error(Errc::Invariant, what); }

}  // namespace sigcon
